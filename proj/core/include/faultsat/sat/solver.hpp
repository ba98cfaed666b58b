#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "faultsat/sat/cnf.hpp"

namespace faultsat::sat {

enum class Status { Sat, Unsat, Timeout };

struct SolveResult {
    Status status = Status::Timeout;
    // Indexed by variable (entry 0 unused); valid when status == Sat.
    std::vector<bool> model;
    // Subset of the supplied assumption literals that is jointly
    // unsatisfiable with the clause set; valid when status == Unsat.
    // Empty core means the clauses alone are unsatisfiable.
    std::vector<Lit> core;
};

// Conflict-driven clause-learning solver with two-watched-literal
// propagation, first-UIP learning, Luby restarts and phase saving.
// Deterministic for a fixed seed; resource limits are expressed as a
// conflict budget so that "timeout" is reproducible.
class Solver {
public:
    Solver();
    explicit Solver(const Cnf& cnf);
    ~Solver();
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;
    Solver(Solver&&) noexcept;
    Solver& operator=(Solver&&) noexcept;

    int new_var();
    int num_vars() const;

    // Clauses may be added between solve() calls (root level only).
    void add_clause(Clause c);
    void add_cnf(const Cnf& cnf);

    // Decision-order diversification; seed 0 keeps the pure index order.
    void set_seed(uint64_t seed);
    // Initial polarity a variable is tried with before phase saving kicks in.
    void set_default_phase(int var, bool phase);
    // Maximum number of conflicts per solve() call; negative = unlimited.
    void set_conflict_budget(int64_t budget);

    SolveResult solve(const std::vector<Lit>& assumptions = {});

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Exhaustive truth-table check, usable up to ~24 variables. Returns a model
// through `model` when satisfiable. Reference oracle for the CDCL solver.
bool brute_force_satisfiable(const Cnf& cnf, std::vector<bool>* model = nullptr);

}  // namespace faultsat::sat
