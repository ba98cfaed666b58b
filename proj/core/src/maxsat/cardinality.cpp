#include "faultsat/maxsat/cardinality.hpp"

#include <stdexcept>

namespace faultsat::maxsat {

using sat::Clause;
using sat::Lit;

std::vector<Clause> encode_at_most_k(const std::vector<Lit>& lits, int k,
                                     const std::function<int()>& new_var) {
    if (k < 0) throw std::invalid_argument("negative bound");
    const int n = static_cast<int>(lits.size());
    std::vector<Clause> out;
    if (k >= n) return out;  // vacuous
    if (k == 0) {
        for (Lit l : lits) out.push_back({-l});
        return out;
    }
    if (k == 1 && n <= 6) {
        // Pairwise at-most-one.
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) out.push_back({-lits[i], -lits[j]});
        return out;
    }

    // Sequential counter (Sinz 2005): s[i][j] <-> "at least j+1 of the first
    // i+1 literals are true", clauses forbid exceeding k.
    std::vector<std::vector<int>> s(static_cast<size_t>(n));
    for (int i = 0; i < n - 1; ++i) {
        s[i].resize(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) s[i][j] = new_var();
    }
    out.push_back({-lits[0], s[0][0]});
    for (int j = 1; j < k; ++j) out.push_back({-s[0][j]});
    for (int i = 1; i < n; ++i) {
        const bool last = i == n - 1;
        if (!last) {
            out.push_back({-lits[i], s[i][0]});
            out.push_back({-s[i - 1][0], s[i][0]});
            for (int j = 1; j < k; ++j) {
                out.push_back({-lits[i], -s[i - 1][j - 1], s[i][j]});
                out.push_back({-s[i - 1][j], s[i][j]});
            }
        }
        out.push_back({-lits[i], -s[i - 1][k - 1]});
    }
    return out;
}

}  // namespace faultsat::maxsat
