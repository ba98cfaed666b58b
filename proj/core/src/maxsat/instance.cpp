#include "faultsat/maxsat/instance.hpp"

#include <set>
#include <stdexcept>

namespace faultsat::maxsat {

namespace {

void check_clause(const sat::Clause& c, int var_count) {
    if (c.empty()) throw std::invalid_argument("empty clause in instance");
    for (sat::Lit l : c)
        if (l == 0 || sat::var_of(l) > var_count)
            throw std::invalid_argument("literal out of range in instance");
}

}  // namespace

void MaxSatInstance::validate() const {
    for (const sat::Clause& c : hard) check_clause(c, var_count);
    std::set<int> selectors;
    for (const ClauseGroup& g : groups) {
        if (g.selector <= 0 || g.selector > var_count)
            throw std::invalid_argument("group selector out of range");
        if (!selectors.insert(g.selector).second)
            throw std::invalid_argument("duplicate group selector");
        for (int ci : g.member_clauses) {
            if (ci < 0 || ci >= static_cast<int>(hard.size()))
                throw std::invalid_argument("group member clause out of range");
            bool has_neg = false;
            for (sat::Lit l : hard[static_cast<size_t>(ci)])
                if (l == -g.selector) has_neg = true;
            if (!has_neg)
                throw std::invalid_argument("group member clause lacks negated selector");
        }
    }
    for (const SoftClause& c : soft) {
        check_clause(c.clause, var_count);
        if (c.weight < 1) throw std::invalid_argument("soft weight must be >= 1");
        if (c.group >= 0) {
            if (c.group >= static_cast<int>(groups.size()))
                throw std::invalid_argument("soft clause group out of range");
            const ClauseGroup& g = groups[static_cast<size_t>(c.group)];
            if (c.clause != sat::Clause{g.selector})
                throw std::invalid_argument("grouped soft clause must be the unit selector");
        }
    }
}

}  // namespace faultsat::maxsat
