#include "faultsat/maxsat/wpm1.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#include "faultsat/maxsat/cardinality.hpp"
#include "faultsat/sat/solver.hpp"

namespace faultsat::maxsat {

using sat::Clause;
using sat::Lit;

namespace {

bool clause_satisfied(const Clause& c, const std::vector<bool>& model) {
    for (Lit l : c) {
        size_t v = static_cast<size_t>(sat::var_of(l));
        if (v < model.size() && ((l > 0) == model[v])) return true;
    }
    return false;
}

Comss comss_from_indices(const MaxSatInstance& inst, std::vector<int> indices) {
    Comss out;
    std::sort(indices.begin(), indices.end());
    out.soft_indices = std::move(indices);
    for (int i : out.soft_indices) {
        const SoftClause& scl = inst.soft[static_cast<size_t>(i)];
        out.cost += scl.weight;
        if (scl.group >= 0) {
            const ClauseGroup& g = inst.groups[static_cast<size_t>(scl.group)];
            out.selectors.push_back(g.selector);
            out.statements.push_back(g.where);
        }
    }
    std::sort(out.statements.begin(), out.statements.end());
    out.statements.erase(std::unique(out.statements.begin(), out.statements.end()),
                         out.statements.end());
    return out;
}

}  // namespace

Comss extract_comss(const MaxSatInstance& inst, const std::vector<bool>& model,
                    const PmaxsatOptions& opts) {
    for (const Clause& c : inst.hard)
        if (!clause_satisfied(c, model))
            throw std::invalid_argument("model violates a hard clause");

    std::vector<int> falsified;
    for (int i = 0; i < static_cast<int>(inst.soft.size()); ++i)
        if (!clause_satisfied(inst.soft[static_cast<size_t>(i)].clause, model))
            falsified.push_back(i);

    // Shrink to subset minimality: member s is redundant when the hard
    // clauses plus every soft clause outside (falsified \ {s}) are
    // simultaneously satisfiable.
    std::vector<int> kept = falsified;
    for (int s : falsified) {
        sat::Solver solver;
        for (int v = 0; v < inst.var_count; ++v) solver.new_var();
        solver.set_seed(opts.seed);
        solver.set_conflict_budget(opts.conflict_budget);
        for (const Clause& c : inst.hard) solver.add_clause(c);
        for (int i = 0; i < static_cast<int>(inst.soft.size()); ++i) {
            bool disabled = false;
            for (int k : kept)
                if (k == i && k != s) disabled = true;
            if (!disabled) solver.add_clause(inst.soft[static_cast<size_t>(i)].clause);
        }
        if (solver.solve().status == sat::Status::Sat)
            kept.erase(std::remove(kept.begin(), kept.end(), s), kept.end());
    }
    return comss_from_indices(inst, kept);
}

PmaxsatResult solve_pmaxsat(const MaxSatInstance& inst, const PmaxsatOptions& opts) {
    inst.validate();

    struct WorkSoft {
        Clause clause;  // original literals plus accumulated relaxation literals
        int64_t weight;
        int orig;  // index into inst.soft
    };
    std::vector<WorkSoft> work;
    work.reserve(inst.soft.size());
    for (int i = 0; i < static_cast<int>(inst.soft.size()); ++i)
        work.push_back({inst.soft[static_cast<size_t>(i)].clause,
                        inst.soft[static_cast<size_t>(i)].weight, i});

    int next_var = inst.var_count;           // relaxation/counter variables
    std::vector<Clause> relax_hard;          // accumulated at-most-one constraints
    int64_t lower_bound = 0;

    PmaxsatResult res;
    for (;;) {
        sat::Solver solver;
        for (int v = 0; v < next_var; ++v) solver.new_var();
        solver.set_seed(opts.seed);
        solver.set_conflict_budget(opts.conflict_budget);
        for (const Clause& c : inst.hard) solver.add_clause(c);
        for (const Clause& c : relax_hard) solver.add_clause(c);

        // Try to satisfy soft clauses first: bias unit softs towards their
        // literal (for localization instances this prefers enabled selectors).
        for (const WorkSoft& wsc : work)
            if (inst.soft[static_cast<size_t>(wsc.orig)].clause.size() == 1) {
                Lit l = inst.soft[static_cast<size_t>(wsc.orig)].clause[0];
                solver.set_default_phase(sat::var_of(l), l > 0);
            }

        std::vector<Lit> assumptions;
        std::map<int, int> assumption_to_work;
        assumptions.reserve(work.size());
        for (int i = 0; i < static_cast<int>(work.size()); ++i) {
            int a = solver.new_var();
            solver.set_default_phase(a, true);
            Clause guarded = work[static_cast<size_t>(i)].clause;
            guarded.push_back(-a);
            solver.add_clause(std::move(guarded));
            assumptions.push_back(a);
            assumption_to_work[a] = i;
        }

        sat::SolveResult sres = solver.solve(assumptions);
        if (sres.status == sat::Status::Timeout) {
            res.status = PmaxsatStatus::Timeout;
            return res;
        }
        if (sres.status == sat::Status::Sat) {
            res.status = PmaxsatStatus::Optimum;
            res.model.assign(static_cast<size_t>(inst.var_count) + 1, false);
            for (int v = 1; v <= inst.var_count; ++v)
                res.model[static_cast<size_t>(v)] = sres.model[static_cast<size_t>(v)];
            res.comss = extract_comss(inst, res.model, opts);
            res.optimum_cost = res.comss.cost;
            assert(res.optimum_cost == lower_bound);
            return res;
        }

        // Unsatisfiable: an empty core means the clauses alone (hard plus
        // always-relaxable soft) are inconsistent, i.e. the hard clauses are.
        std::vector<int> core;
        for (Lit a : sres.core) {
            auto it = assumption_to_work.find(sat::var_of(a));
            if (it != assumption_to_work.end()) core.push_back(it->second);
        }
        if (core.empty()) {
            res.status = PmaxsatStatus::HardUnsat;
            return res;
        }
        std::sort(core.begin(), core.end());
        core.erase(std::unique(core.begin(), core.end()), core.end());

        // One pass of deletion-based trimming for small cores. Each probe
        // weakens the assumptions, which can turn a cheap refutation into a
        // deep one, so probes run under a small conflict budget: only members
        // whose removal is *cheaply* confirmed unnecessary get dropped.
        // Oversized cores cost a wider at-most-one ladder but never the
        // optimum, so timing out here is always safe.
        if (core.size() > 1 && core.size() <= 32) {
            constexpr int64_t kTrimConflictBudget = 4096;
            int64_t budget = opts.conflict_budget;
            if (budget < 0 || budget > kTrimConflictBudget)
                budget = kTrimConflictBudget;
            solver.set_conflict_budget(budget);
            std::vector<int> trimmed = core;
            for (int candidate : core) {
                std::vector<int> attempt;
                for (int i : trimmed)
                    if (i != candidate) attempt.push_back(i);
                if (attempt.empty()) continue;
                std::vector<Lit> sub;
                for (int i : attempt)
                    sub.push_back(assumptions[static_cast<size_t>(i)]);
                sat::SolveResult r2 = solver.solve(sub);
                if (r2.status == sat::Status::Unsat) trimmed = std::move(attempt);
            }
            core = std::move(trimmed);
        }

        int64_t wmin = work[static_cast<size_t>(core[0])].weight;
        for (int i : core) wmin = std::min(wmin, work[static_cast<size_t>(i)].weight);
        lower_bound += wmin;

        // Fu&Malik relaxation with weight splitting: each core member gets a
        // fresh relaxation variable at weight wmin; any residual weight
        // survives as an unrelaxed clone.
        std::vector<Lit> relaxers;
        for (int i : core) {
            WorkSoft& wsc = work[static_cast<size_t>(i)];
            if (wsc.weight > wmin)
                work.push_back({wsc.clause, wsc.weight - wmin, wsc.orig});
            WorkSoft& again = work[static_cast<size_t>(i)];  // re-fetch (push_back may realloc)
            int r = ++next_var;
            again.clause.push_back(r);
            again.weight = wmin;
            relaxers.push_back(r);
        }
        if (relaxers.size() > 1) {
            auto fresh = [&next_var]() { return ++next_var; };
            for (Clause& c : encode_at_most_k(relaxers, 1, fresh))
                relax_hard.push_back(std::move(c));
        }
    }
}

}  // namespace faultsat::maxsat
