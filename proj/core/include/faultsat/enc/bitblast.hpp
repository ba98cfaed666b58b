#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "faultsat/sat/cnf.hpp"

namespace faultsat::enc {

// A fixed-width two's-complement value as SAT literals, least significant
// bit first. Constant bits are literals of the reserved constant variable,
// so a vector may mix variable and constant bits freely.
using BitVec = std::vector<sat::Lit>;

// By convention variable 1 is the constant TRUE in every formula produced
// by the encoder. It never appears in emitted clauses (constant literals are
// folded away), so it stays unconstrained and models may assign it freely.
inline constexpr int kConstVar = 1;
inline constexpr sat::Lit kTrue = kConstVar;
inline constexpr sat::Lit kFalse = -kConstVar;

// Value of a literal under a model indexed by variable; folds constants.
inline bool lit_value(sat::Lit l, const std::vector<bool>& model) {
    if (sat::var_of(l) == kConstVar) return l > 0;
    bool v = model[static_cast<size_t>(sat::var_of(l))];
    return l > 0 ? v : !v;
}

// Signed two's-complement value of a bit vector under a model.
long long decode_vec(const BitVec& v, const std::vector<bool>& model);

// Circuit-to-CNF encoder (Tseitin transformation with constant folding).
// Emits clauses into an external clause list and allocates variables through
// an external counter, so plain SAT formulas and MAX-SAT instances share one
// implementation. All gate construction is deterministic.
class BitBlaster {
public:
    // `var_count` and `clauses` belong to the formula under construction;
    // `meta` (optional) receives provenance for named bits. The constant
    // variable must already be allocated: var_count >= kConstVar.
    BitBlaster(int& var_count, std::vector<sat::Clause>& clauses,
               std::unordered_map<int, sat::VarMeta>* meta);

    bool is_const(sat::Lit l) const { return sat::var_of(l) == kConstVar; }

    // Adds a clause after prefixing active guards and folding constants
    // (a TRUE literal satisfies the clause, FALSE literals are dropped,
    // complementary or duplicate literals are normalized away). Folding to
    // the empty clause means the encoder asserted a contradiction outright,
    // which is a bug: it throws.
    void add_clause(sat::Clause c);

    // Every clause emitted while the guard is active carries an extra
    // literal -g, i.e. it is enforced only when g holds. Used to encode
    // partial relations such as the non-degenerate division case.
    void push_guard(sat::Lit g);
    void pop_guard();

    // --- bit allocation -----------------------------------------------------
    sat::Lit fresh_bit();
    BitVec fresh_vec(int w);  // anonymous (Tseitin) bits
    BitVec fresh_vec(int w, const std::string& name, int version);
    BitVec const_vec(long long v, int w);  // wraps v to w bits

    // --- gates (fold constants and trivial shapes) ---------------------------
    sat::Lit mk_and(sat::Lit a, sat::Lit b);
    sat::Lit mk_or(sat::Lit a, sat::Lit b);
    sat::Lit mk_xor(sat::Lit a, sat::Lit b);
    sat::Lit mk_iff(sat::Lit a, sat::Lit b) { return -mk_xor(a, b); }
    sat::Lit mk_mux(sat::Lit s, sat::Lit t, sat::Lit f);  // s ? t : f
    sat::Lit mk_and_many(std::vector<sat::Lit> ls);
    sat::Lit mk_or_many(std::vector<sat::Lit> ls);

    // --- assertions ----------------------------------------------------------
    void fix_true(sat::Lit l);
    void fix_equal(const BitVec& a, const BitVec& b);

    // --- arithmetic (wraparound two's complement, |a| == |b|) ----------------
    BitVec add(const BitVec& a, const BitVec& b);
    BitVec sub(const BitVec& a, const BitVec& b);
    BitVec neg(const BitVec& a);
    BitVec mul(const BitVec& a, const BitVec& b);
    BitVec sign_extend(const BitVec& a, int w) const;

    struct DivMod {
        BitVec quot;
        BitVec rem;
    };
    // Totalized division agreeing with exec::div_total / exec::mod_total on
    // every operand pair, including division by zero and min/-1.
    DivMod divmod(const BitVec& x, const BitVec& d);

    // --- comparisons ----------------------------------------------------------
    sat::Lit eq_vec(const BitVec& a, const BitVec& b);
    sat::Lit lt_u(const BitVec& a, const BitVec& b);  // unsigned
    sat::Lit lt_s(const BitVec& a, const BitVec& b);  // signed
    sat::Lit le_s(const BitVec& a, const BitVec& b);

    // --- vectors ----------------------------------------------------------------
    BitVec mux_vec(sat::Lit s, const BitVec& t, const BitVec& f);
    // cells[idx]; any out-of-range index yields 0, as in the interpreter.
    BitVec select(const std::vector<BitVec>& cells, const BitVec& idx);
    // cells with cells[idx] = val; an out-of-range store changes nothing.
    std::vector<BitVec> store(const std::vector<BitVec>& cells,
                              const BitVec& idx, const BitVec& val);

private:
    // Absolute value, widened one bit so the minimum value does not overflow.
    BitVec abs_ext(const BitVec& a);

    int& var_count_;
    std::vector<sat::Clause>& clauses_;
    std::unordered_map<int, sat::VarMeta>* meta_;
    std::vector<sat::Lit> guards_;
};

}  // namespace faultsat::enc
