#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace faultsat::sat {

// Literals are nonzero signed integers in DIMACS convention: +v asserts
// variable v, -v asserts its negation. Variables are numbered from 1.
using Lit = int;
using Clause = std::vector<Lit>;

inline int var_of(Lit l) { return l < 0 ? -l : l; }
inline Lit neg(Lit l) { return -l; }

// Provenance of a Boolean variable: which program variable bit it encodes,
// or a Tseitin auxiliary introduced during encoding.
struct VarMeta {
    std::string prog_var;  // program variable or array name; empty for aux
    int version = 0;       // SSA version index
    int bit = 0;           // bit position, 0 = least significant
    bool tseitin = true;
};

struct Cnf {
    int var_count = 0;
    std::vector<Clause> clauses;
    std::unordered_map<int, VarMeta> var_meta;

    int new_var() { return ++var_count; }

    int new_var(const std::string& prog_var, int version, int bit) {
        int v = ++var_count;
        var_meta[v] = VarMeta{prog_var, version, bit, false};
        return v;
    }

    // Rejects tautological or malformed clauses per the representation
    // invariant (no clause may contain both a literal and its negation).
    void add_clause(Clause c);

    // True when `assignment` (indexed by variable, entry v is the value of
    // variable v) satisfies every clause.
    bool satisfied_by(const std::vector<bool>& assignment) const;
};

// DIMACS "p cnf" serialization, used for debugging and external cross-checks.
std::string write_dimacs(const Cnf& cnf);
Cnf read_dimacs(const std::string& text);

}  // namespace faultsat::sat
