#include "faultsat/enc/bitblast.hpp"

#include <algorithm>
#include <stdexcept>

#include "faultsat/exec/arith.hpp"

namespace faultsat::enc {

long long decode_vec(const BitVec& v, const std::vector<bool>& model) {
    unsigned long long u = 0;
    for (size_t i = 0; i < v.size(); ++i)
        if (lit_value(v[i], model)) u |= 1ull << i;
    return exec::wrap(static_cast<long long>(u), static_cast<int>(v.size()));
}

BitBlaster::BitBlaster(int& var_count, std::vector<sat::Clause>& clauses,
                       std::unordered_map<int, sat::VarMeta>* meta)
    : var_count_(var_count), clauses_(clauses), meta_(meta) {
    if (var_count_ < kConstVar)
        throw std::logic_error("constant variable not allocated");
}

void BitBlaster::add_clause(sat::Clause c) {
    for (sat::Lit g : guards_) c.push_back(-g);
    sat::Clause out;
    for (sat::Lit l : c) {
        if (l == 0) throw std::logic_error("zero literal in clause");
        if (is_const(l)) {
            if (l == kTrue) return;  // clause satisfied by a constant
            continue;                // constant FALSE contributes nothing
        }
        out.push_back(l);
    }
    std::sort(out.begin(), out.end(),
              [](sat::Lit a, sat::Lit b) {
                  return sat::var_of(a) != sat::var_of(b)
                             ? sat::var_of(a) < sat::var_of(b)
                             : a < b;
              });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] == -out[i - 1]) return;  // tautology: trivially satisfied
    if (out.empty())
        throw std::logic_error("bit blasting produced an empty clause");
    clauses_.push_back(std::move(out));
}

void BitBlaster::push_guard(sat::Lit g) { guards_.push_back(g); }

void BitBlaster::pop_guard() {
    if (guards_.empty()) throw std::logic_error("guard stack underflow");
    guards_.pop_back();
}

sat::Lit BitBlaster::fresh_bit() { return ++var_count_; }

BitVec BitBlaster::fresh_vec(int w) {
    BitVec v(static_cast<size_t>(w));
    for (int i = 0; i < w; ++i) v[static_cast<size_t>(i)] = fresh_bit();
    return v;
}

BitVec BitBlaster::fresh_vec(int w, const std::string& name, int version) {
    BitVec v(static_cast<size_t>(w));
    for (int i = 0; i < w; ++i) {
        int b = ++var_count_;
        if (meta_) (*meta_)[b] = sat::VarMeta{name, version, i, false};
        v[static_cast<size_t>(i)] = b;
    }
    return v;
}

BitVec BitBlaster::const_vec(long long v, int w) {
    unsigned long long u = static_cast<unsigned long long>(exec::wrap(v, w));
    BitVec out(static_cast<size_t>(w));
    for (int i = 0; i < w; ++i)
        out[static_cast<size_t>(i)] = (u >> i) & 1 ? kTrue : kFalse;
    return out;
}

sat::Lit BitBlaster::mk_and(sat::Lit a, sat::Lit b) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
    if (a == b) return a;
    if (a == -b) return kFalse;
    sat::Lit g = fresh_bit();
    add_clause({-g, a});
    add_clause({-g, b});
    add_clause({g, -a, -b});
    return g;
}

sat::Lit BitBlaster::mk_or(sat::Lit a, sat::Lit b) { return -mk_and(-a, -b); }

sat::Lit BitBlaster::mk_xor(sat::Lit a, sat::Lit b) {
    if (a == kFalse) return b;
    if (b == kFalse) return a;
    if (a == kTrue) return -b;
    if (b == kTrue) return -a;
    if (a == b) return kFalse;
    if (a == -b) return kTrue;
    sat::Lit g = fresh_bit();
    add_clause({-g, a, b});
    add_clause({-g, -a, -b});
    add_clause({g, a, -b});
    add_clause({g, -a, b});
    return g;
}

sat::Lit BitBlaster::mk_mux(sat::Lit s, sat::Lit t, sat::Lit f) {
    if (s == kTrue) return t;
    if (s == kFalse) return f;
    if (t == f) return t;
    if (t == -f) return mk_iff(s, t);
    if (t == kTrue) return mk_or(s, f);
    if (t == kFalse) return mk_and(-s, f);
    if (f == kTrue) return mk_or(-s, t);
    if (f == kFalse) return mk_and(s, t);
    sat::Lit g = fresh_bit();
    add_clause({-s, -t, g});
    add_clause({-s, t, -g});
    add_clause({s, -f, g});
    add_clause({s, f, -g});
    return g;
}

sat::Lit BitBlaster::mk_and_many(std::vector<sat::Lit> ls) {
    std::vector<sat::Lit> kept;
    for (sat::Lit l : ls) {
        if (l == kFalse) return kFalse;
        if (l == kTrue) continue;
        kept.push_back(l);
    }
    std::sort(kept.begin(), kept.end(), [](sat::Lit a, sat::Lit b) {
        return sat::var_of(a) != sat::var_of(b) ? sat::var_of(a) < sat::var_of(b)
                                                : a < b;
    });
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    for (size_t i = 1; i < kept.size(); ++i)
        if (kept[i] == -kept[i - 1]) return kFalse;
    if (kept.empty()) return kTrue;
    if (kept.size() == 1) return kept[0];
    sat::Lit g = fresh_bit();
    sat::Clause back{g};
    for (sat::Lit l : kept) {
        add_clause({-g, l});
        back.push_back(-l);
    }
    add_clause(back);
    return g;
}

sat::Lit BitBlaster::mk_or_many(std::vector<sat::Lit> ls) {
    for (sat::Lit& l : ls) l = -l;
    return -mk_and_many(std::move(ls));
}

void BitBlaster::fix_true(sat::Lit l) { add_clause({l}); }

void BitBlaster::fix_equal(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw std::logic_error("width mismatch");
    for (size_t i = 0; i < a.size(); ++i) {
        add_clause({a[i], -b[i]});
        add_clause({-a[i], b[i]});
    }
}

BitVec BitBlaster::add(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw std::logic_error("width mismatch");
    BitVec out(a.size());
    sat::Lit carry = kFalse;
    for (size_t i = 0; i < a.size(); ++i) {
        sat::Lit axb = mk_xor(a[i], b[i]);
        out[i] = mk_xor(axb, carry);
        if (i + 1 < a.size())
            carry = mk_or(mk_and(a[i], b[i]), mk_and(carry, axb));
    }
    return out;
}

BitVec BitBlaster::neg(const BitVec& a) {
    return sub(const_vec(0, static_cast<int>(a.size())), a);
}

BitVec BitBlaster::sub(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw std::logic_error("width mismatch");
    // a + ~b + 1, via a ripple with carry-in 1.
    BitVec out(a.size());
    sat::Lit carry = kTrue;
    for (size_t i = 0; i < a.size(); ++i) {
        sat::Lit nb = -b[i];
        sat::Lit axb = mk_xor(a[i], nb);
        out[i] = mk_xor(axb, carry);
        if (i + 1 < a.size())
            carry = mk_or(mk_and(a[i], nb), mk_and(carry, axb));
    }
    return out;
}

BitVec BitBlaster::mul(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw std::logic_error("width mismatch");
    size_t w = a.size();
    BitVec acc = const_vec(0, static_cast<int>(w));
    for (size_t i = 0; i < w; ++i) {
        if (a[i] == kFalse) continue;
        BitVec row(w, kFalse);
        for (size_t j = i; j < w; ++j) row[j] = mk_and(a[i], b[j - i]);
        acc = add(acc, row);
    }
    return acc;
}

BitVec BitBlaster::sign_extend(const BitVec& a, int w) const {
    if (static_cast<size_t>(w) < a.size())
        throw std::logic_error("sign_extend cannot narrow");
    BitVec out = a;
    out.resize(static_cast<size_t>(w), a.back());
    return out;
}

sat::Lit BitBlaster::eq_vec(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw std::logic_error("width mismatch");
    std::vector<sat::Lit> bits(a.size());
    for (size_t i = 0; i < a.size(); ++i) bits[i] = mk_iff(a[i], b[i]);
    return mk_and_many(std::move(bits));
}

sat::Lit BitBlaster::lt_u(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw std::logic_error("width mismatch");
    sat::Lit lt = kFalse;
    for (size_t i = 0; i < a.size(); ++i)
        lt = mk_mux(mk_iff(a[i], b[i]), lt, mk_and(-a[i], b[i]));
    return lt;
}

sat::Lit BitBlaster::lt_s(const BitVec& a, const BitVec& b) {
    sat::Lit sa = a.back(), sb = b.back();
    return mk_or(mk_and(sa, -sb), mk_and(mk_iff(sa, sb), lt_u(a, b)));
}

sat::Lit BitBlaster::le_s(const BitVec& a, const BitVec& b) {
    return -lt_s(b, a);
}

BitVec BitBlaster::mux_vec(sat::Lit s, const BitVec& t, const BitVec& f) {
    if (t.size() != f.size()) throw std::logic_error("width mismatch");
    BitVec out(t.size());
    for (size_t i = 0; i < t.size(); ++i) out[i] = mk_mux(s, t[i], f[i]);
    return out;
}

BitVec BitBlaster::abs_ext(const BitVec& a) {
    BitVec e = sign_extend(a, static_cast<int>(a.size()) + 1);
    return mux_vec(e.back(), neg(e), e);
}

BitBlaster::DivMod BitBlaster::divmod(const BitVec& x, const BitVec& d) {
    if (x.size() != d.size()) throw std::logic_error("width mismatch");
    int w = static_cast<int>(x.size());
    long long minv = exec::min_value(w);

    sat::Lit div_zero = eq_vec(d, const_vec(0, w));
    sat::Lit overflow = mk_and(eq_vec(x, const_vec(minv, w)),
                               eq_vec(d, const_vec(-1, w)));
    sat::Lit normal = mk_and(-div_zero, -overflow);

    // In the normal case quotient and remainder satisfy the C truncation
    // relation: x = q*d + r, |r| < |d|, and r is zero or matches x's sign.
    // The product is formed at double width so it cannot wrap.
    BitVec qn = fresh_vec(w);
    BitVec rn = fresh_vec(w);
    push_guard(normal);
    {
        BitVec prod = mul(sign_extend(qn, 2 * w), sign_extend(d, 2 * w));
        fix_equal(add(prod, sign_extend(rn, 2 * w)), sign_extend(x, 2 * w));
        fix_true(lt_u(abs_ext(rn), abs_ext(d)));
        sat::Lit rem_zero = eq_vec(rn, const_vec(0, w));
        add_clause({rem_zero, mk_iff(rn.back(), x.back())});
    }
    pop_guard();

    BitVec q_zero = mux_vec(x.back(), const_vec(1, w), const_vec(-1, w));
    DivMod out;
    out.quot = mux_vec(div_zero, q_zero,
                       mux_vec(overflow, const_vec(minv, w), qn));
    out.rem = mux_vec(div_zero, x, mux_vec(overflow, const_vec(0, w), rn));
    return out;
}

BitVec BitBlaster::select(const std::vector<BitVec>& cells, const BitVec& idx) {
    int w = static_cast<int>(idx.size());
    BitVec out = const_vec(0, cells.empty() ? w : static_cast<int>(cells[0].size()));
    for (size_t i = 0; i < cells.size(); ++i) {
        // Cells beyond the width's positive range can never be addressed.
        if (static_cast<long long>(i) > exec::max_value(w)) break;
        out = mux_vec(eq_vec(idx, const_vec(static_cast<long long>(i), w)),
                      cells[i], out);
    }
    return out;
}

std::vector<BitVec> BitBlaster::store(const std::vector<BitVec>& cells,
                                      const BitVec& idx, const BitVec& val) {
    int w = static_cast<int>(idx.size());
    std::vector<BitVec> out = cells;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (static_cast<long long>(i) > exec::max_value(w)) break;
        out[i] = mux_vec(eq_vec(idx, const_vec(static_cast<long long>(i), w)),
                         val, cells[i]);
    }
    return out;
}

}  // namespace faultsat::enc
