#pragma once

#include <functional>
#include <vector>

#include "faultsat/sat/cnf.hpp"

namespace faultsat::maxsat {

// Clauses enforcing "at most k of `lits` are true". Fresh auxiliary
// variables are obtained through `new_var`. Uses the pairwise encoding for
// at-most-one over few literals and a sequential counter otherwise; models
// projected onto `lits` are exactly the assignments with <= k true literals.
std::vector<sat::Clause> encode_at_most_k(const std::vector<sat::Lit>& lits, int k,
                                          const std::function<int()>& new_var);

}  // namespace faultsat::maxsat
