#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faultsat/sat/cnf.hpp"

namespace faultsat::maxsat {

// Source location a selector maps back to. `iter` is the loop unrolling
// index when the instance was built at iteration granularity.
struct Location {
    std::string file;
    int line = 0;
    std::optional<int> iter;

    friend bool operator==(const Location& a, const Location& b) {
        return a.file == b.file && a.line == b.line && a.iter == b.iter;
    }
    friend bool operator<(const Location& a, const Location& b) {
        if (a.file != b.file) return a.file < b.file;
        if (a.line != b.line) return a.line < b.line;
        return a.iter.value_or(-1) < b.iter.value_or(-1);
    }
};

// All clauses of one program statement (or one statement-iteration pair),
// each augmented with the negation of the group's selector variable.
struct ClauseGroup {
    int selector = 0;      // Boolean variable guarding the group
    int statement_id = 0;  // frontend statement id
    Location where;
    std::optional<int> loop_iter;     // unrolling index at iteration granularity
    std::vector<int> member_clauses;  // indices into MaxSatInstance::hard
};

struct SoftClause {
    sat::Clause clause;
    int64_t weight = 1;
    int group = -1;  // index into groups, or -1 for a free-standing soft clause
};

// Partial weighted MAX-SAT instance. Hard clauses live in `hard`; soft
// clauses carry positive weights. For localization instances every soft
// clause is a unit selector clause [selector] owned by a ClauseGroup.
struct MaxSatInstance {
    int var_count = 0;
    std::vector<sat::Clause> hard;
    std::vector<SoftClause> soft;
    std::vector<ClauseGroup> groups;

    int new_var() { return ++var_count; }

    int64_t soft_weight_sum() const {
        int64_t s = 0;
        for (const SoftClause& c : soft) s += c.weight;
        return s;
    }
    // Strictly exceeds the sum of soft weights, as required of WCNF tops.
    int64_t top_weight() const { return soft_weight_sum() + 1; }

    // Structural well-formedness: positive weights, literals in range,
    // groups with distinct selectors whose member clauses contain -selector.
    void validate() const;
};

// DIMACS WCNF serialization ("p wcnf <vars> <clauses> <top>"), with
// "c group <selector> <file>:<line> [iter <k>]" comments mapping selector
// variables back to source locations.
std::string write_wcnf(const MaxSatInstance& inst);
MaxSatInstance read_wcnf(const std::string& text);

}  // namespace faultsat::maxsat
