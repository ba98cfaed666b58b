#pragma once

#include <cstdint>
#include <vector>

#include "faultsat/maxsat/instance.hpp"

namespace faultsat::maxsat {

// A minimal correction set: soft clauses falsified in an optimal solution,
// shrunk to subset minimality. For localization instances the soft clauses
// are unit selector clauses, so the set maps to selector variables and from
// there to source statements.
struct Comss {
    std::vector<int> soft_indices;      // indices into MaxSatInstance::soft
    std::vector<int> selectors;         // selector variables (grouped softs only)
    std::vector<Location> statements;   // mapped locations, sorted, deduplicated
    int64_t cost = 0;

    bool empty() const { return soft_indices.empty(); }
};

struct PmaxsatOptions {
    uint64_t seed = 0;
    int64_t conflict_budget = -1;  // per inner SAT call; negative = unlimited
};

enum class PmaxsatStatus { Optimum, HardUnsat, Timeout };

struct PmaxsatResult {
    PmaxsatStatus status = PmaxsatStatus::Timeout;
    int64_t optimum_cost = 0;
    Comss comss;
    // Optimal assignment over the instance variables (entry 0 unused).
    std::vector<bool> model;
};

// Core-guided partial weighted MAX-SAT (Fu&Malik / WPM1 family): iterate
// SAT-with-assumptions, relax each unsatisfiable core with fresh relaxation
// variables plus an at-most-one side constraint, splitting weights for
// weighted instances, until satisfiable. Returns the optimum and one CoMSS.
PmaxsatResult solve_pmaxsat(const MaxSatInstance& inst, const PmaxsatOptions& opts = {});

// Collects the soft clauses falsified by `model` (which must satisfy all
// hard clauses) and shrinks the set to subset minimality by attempting to
// re-enable each member with one SAT call.
Comss extract_comss(const MaxSatInstance& inst, const std::vector<bool>& model,
                    const PmaxsatOptions& opts = {});

}  // namespace faultsat::maxsat
