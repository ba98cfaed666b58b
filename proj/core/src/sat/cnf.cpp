#include "faultsat/sat/cnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace faultsat::sat {

void Cnf::add_clause(Clause c) {
    if (c.empty()) throw std::invalid_argument("empty clause");
    std::sort(c.begin(), c.end(), [](Lit a, Lit b) {
        return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b;
    });
    Clause out;
    out.reserve(c.size());
    for (Lit l : c) {
        if (l == 0) throw std::invalid_argument("zero literal");
        if (var_of(l) > var_count) throw std::invalid_argument("literal out of range");
        if (!out.empty() && out.back() == l) continue;  // duplicate
        if (!out.empty() && out.back() == -l)
            throw std::invalid_argument("clause contains a literal and its negation");
        out.push_back(l);
    }
    clauses.push_back(std::move(out));
}

bool Cnf::satisfied_by(const std::vector<bool>& assignment) const {
    for (const Clause& c : clauses) {
        bool sat = false;
        for (Lit l : c) {
            bool v = assignment[static_cast<size_t>(var_of(l))];
            if ((l > 0) == v) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

}  // namespace faultsat::sat
