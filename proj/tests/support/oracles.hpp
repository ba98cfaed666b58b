#pragma once

// Small exhaustive reference implementations used to cross-check the real
// solver and optimizer on instances tiny enough to enumerate.

#include <cstdint>
#include <random>
#include <vector>

#include "faultsat/maxsat/instance.hpp"
#include "faultsat/sat/cnf.hpp"

namespace testsupport {

// Generates a random k-SAT instance over `vars` variables.
inline faultsat::sat::Cnf random_cnf(std::mt19937& rng, int vars, int clauses, int k) {
  faultsat::sat::Cnf cnf;
  for (int i = 0; i < vars; ++i) cnf.new_var();
  std::uniform_int_distribution<int> var_dist(1, vars);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  for (int c = 0; c < clauses; ++c) {
    faultsat::sat::Clause cl;
    while (true) {
      cl.clear();
      for (int j = 0; j < k; ++j) {
        int v = var_dist(rng);
        cl.push_back(sign_dist(rng) ? v : -v);
      }
      // Reject tautologies so add_clause accepts the clause as-is.
      bool taut = false;
      for (size_t a = 0; a < cl.size() && !taut; ++a)
        for (size_t b = a + 1; b < cl.size() && !taut; ++b)
          if (cl[a] == -cl[b]) taut = true;
      if (!taut) break;
    }
    cnf.add_clause(cl);
  }
  return cnf;
}

inline bool clause_true_under(const faultsat::sat::Clause& cl, std::uint32_t bits) {
  for (faultsat::sat::Lit l : cl) {
    bool val = (bits >> (faultsat::sat::var_of(l) - 1)) & 1u;
    if (l < 0) val = !val;
    if (val) return true;
  }
  return false;
}

// Exhaustive optimum for a partial weighted MAX-SAT instance (<= ~22 vars).
// Returns the minimum total weight of falsified soft clauses over all
// assignments satisfying every hard clause, or -1 if the hard part is
// unsatisfiable on its own.
inline std::int64_t brute_force_pmaxsat(const faultsat::maxsat::MaxSatInstance& inst,
                                        std::uint32_t* best_assignment = nullptr) {
  const int n = inst.var_count;
  std::int64_t best = -1;
  for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
    const auto b = static_cast<std::uint32_t>(bits);
    bool hard_ok = true;
    for (const auto& h : inst.hard)
      if (!clause_true_under(h, b)) {
        hard_ok = false;
        break;
      }
    if (!hard_ok) continue;
    std::int64_t cost = 0;
    for (const auto& s : inst.soft)
      if (!clause_true_under(s.clause, b)) cost += s.weight;
    if (best < 0 || cost < best) {
      best = cost;
      if (best_assignment) *best_assignment = b;
    }
  }
  return best;
}

}  // namespace testsupport
