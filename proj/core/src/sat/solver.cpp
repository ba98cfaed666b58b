#include "faultsat/sat/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace faultsat::sat {

namespace {

constexpr int8_t kUndef = 0, kTrue = 1, kFalse = 2;

inline int lit_index(Lit l) { return 2 * (var_of(l) - 1) + (l < 0 ? 1 : 0); }

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Luby restart sequence: 1,1,2,1,1,2,4,... Position i+1 either ends a
// block of length 2^k-1 (value 2^(k-1)) or falls inside one of its two
// half-blocks; the modulo maps both halves onto the same sub-block.
int64_t luby(int64_t i) {
    int64_t k = 1;
    while ((int64_t(1) << k) - 1 < i + 1) ++k;
    while ((int64_t(1) << k) - 1 != i + 1) {
        --k;
        i %= (int64_t(1) << k) - 1;
    }
    return int64_t(1) << (k - 1);
}

}  // namespace

struct Solver::Impl {
    // Clause database: originals and learned clauses. Deletion is by
    // tombstone so that watcher lists can be pruned lazily and the
    // two-watched-literal invariant is never broken by compaction.
    std::vector<Clause> db;
    std::vector<double> clause_act;
    std::vector<uint8_t> removed;
    std::vector<uint8_t> learned;

    std::vector<std::vector<int>> watches;  // lit index -> clause ids
    std::vector<int8_t> assigns;            // var -> kUndef/kTrue/kFalse
    std::vector<int> level;                 // var -> decision level
    std::vector<int> reason;                // var -> clause id or -1
    std::vector<Lit> trail;
    std::vector<int> trail_lim;
    size_t qhead = 0;

    std::vector<double> activity;  // var -> VSIDS activity
    std::vector<int8_t> saved_phase;
    double var_inc = 1.0;
    double cla_inc = 1.0;

    // Binary max-heap over variables ordered by (activity desc, index asc).
    std::vector<int> heap;
    std::vector<int> heap_pos;  // var -> position in heap, -1 if absent

    uint64_t seed = 0;
    bool jitter_applied = false;
    int64_t conflict_budget = -1;
    bool ok = true;

    std::vector<int8_t> seen;
    std::vector<Lit> assumptions;

    int nvars = 0;
    int64_t learned_live = 0;

    int8_t value(Lit l) const {
        int8_t v = assigns[static_cast<size_t>(var_of(l))];
        if (v == kUndef) return kUndef;
        return (l > 0) == (v == kTrue) ? kTrue : kFalse;
    }
    int decision_level() const { return static_cast<int>(trail_lim.size()); }

    // ---- variable order heap ----
    bool heap_less(int a, int b) const {
        if (activity[a] != activity[b]) return activity[a] > activity[b];
        return a < b;
    }
    void heap_swap(size_t i, size_t j) {
        std::swap(heap[i], heap[j]);
        heap_pos[heap[i]] = static_cast<int>(i);
        heap_pos[heap[j]] = static_cast<int>(j);
    }
    void sift_up(size_t i) {
        while (i > 0) {
            size_t p = (i - 1) / 2;
            if (!heap_less(heap[i], heap[p])) break;
            heap_swap(i, p);
            i = p;
        }
    }
    void sift_down(size_t i) {
        for (;;) {
            size_t l = 2 * i + 1, r = 2 * i + 2, best = i;
            if (l < heap.size() && heap_less(heap[l], heap[best])) best = l;
            if (r < heap.size() && heap_less(heap[r], heap[best])) best = r;
            if (best == i) break;
            heap_swap(i, best);
            i = best;
        }
    }
    void heap_insert(int v) {
        if (heap_pos[v] >= 0) return;
        heap.push_back(v);
        heap_pos[v] = static_cast<int>(heap.size() - 1);
        sift_up(heap.size() - 1);
    }
    int heap_pop() {
        int v = heap[0];
        heap_swap(0, heap.size() - 1);
        heap.pop_back();
        heap_pos[v] = -1;
        if (!heap.empty()) sift_down(0);
        return v;
    }
    void heap_update(int v) {
        if (heap_pos[v] >= 0) sift_up(static_cast<size_t>(heap_pos[v]));
    }

    // ---- bookkeeping ----
    int new_var() {
        ++nvars;
        watches.push_back({});
        watches.push_back({});
        assigns.push_back(kUndef);
        level.push_back(0);
        reason.push_back(-1);
        activity.push_back(0.0);
        saved_phase.push_back(kFalse);
        heap_pos.push_back(-1);
        seen.push_back(0);
        return nvars;
    }

    void bump_var(int v) {
        activity[v] += var_inc;
        if (activity[v] > 1e100) {
            for (int i = 1; i <= nvars; ++i) activity[i] *= 1e-100;
            var_inc *= 1e-100;
        }
        heap_update(v);
    }
    void bump_clause(int ci) {
        if (!learned[ci]) return;
        clause_act[ci] += cla_inc;
        if (clause_act[ci] > 1e20) {
            for (size_t i = 0; i < db.size(); ++i) clause_act[i] *= 1e-20;
            cla_inc *= 1e-20;
        }
    }

    void enqueue(Lit l, int from) {
        int v = var_of(l);
        assigns[v] = l > 0 ? kTrue : kFalse;
        level[v] = decision_level();
        reason[v] = from;
        trail.push_back(l);
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (size_t i = trail.size(); i-- > static_cast<size_t>(trail_lim[lvl]);) {
            int v = var_of(trail[i]);
            saved_phase[v] = assigns[v];
            assigns[v] = kUndef;
            reason[v] = -1;
            heap_insert(v);
        }
        trail.resize(static_cast<size_t>(trail_lim[lvl]));
        trail_lim.resize(static_cast<size_t>(lvl));
        qhead = trail.size();
    }

    void attach(int ci) {
        const Clause& c = db[ci];
        watches[lit_index(c[0])].push_back(ci);
        watches[lit_index(c[1])].push_back(ci);
    }

    int push_clause(Clause c, bool is_learned) {
        db.push_back(std::move(c));
        clause_act.push_back(0.0);
        removed.push_back(0);
        learned.push_back(is_learned ? 1 : 0);
        if (is_learned) ++learned_live;
        int ci = static_cast<int>(db.size()) - 1;
        attach(ci);
        return ci;
    }

    // Root-level clause addition with simplification.
    void add_clause(Clause c) {
        if (!ok) return;
        std::sort(c.begin(), c.end(), [](Lit a, Lit b) {
            return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b;
        });
        Clause out;
        for (Lit l : c) {
            if (l == 0 || var_of(l) > nvars) throw std::invalid_argument("bad literal");
            if (!out.empty() && out.back() == l) continue;
            if (!out.empty() && out.back() == -l) return;  // tautology
            if (value(l) == kTrue) return;                 // satisfied at root
            if (value(l) == kFalse) continue;              // falsified at root
            out.push_back(l);
        }
        if (out.empty()) {
            ok = false;
            return;
        }
        if (out.size() == 1) {
            enqueue(out[0], -1);
            if (propagate() != -1) ok = false;
            return;
        }
        push_clause(std::move(out), false);
    }

    // Returns conflicting clause id or -1.
    int propagate() {
        while (qhead < trail.size()) {
            Lit p = trail[qhead++];
            Lit false_lit = neg(p);
            std::vector<int>& ws = watches[lit_index(false_lit)];
            size_t keep = 0;
            for (size_t i = 0; i < ws.size(); ++i) {
                int ci = ws[i];
                if (removed[ci]) continue;  // lazy watcher pruning
                Clause& c = db[ci];
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                if (value(c[0]) == kTrue) {
                    ws[keep++] = ci;
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.size(); ++k) {
                    if (value(c[k]) != kFalse) {
                        std::swap(c[1], c[k]);
                        watches[lit_index(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                // Unit or conflicting.
                ws[keep++] = ci;
                if (value(c[0]) == kFalse) {
                    for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                    ws.resize(keep);
                    qhead = trail.size();
                    return ci;
                }
                enqueue(c[0], ci);
            }
            ws.resize(keep);
        }
        return -1;
    }

    // First-UIP conflict analysis.
    void analyze(int confl, Clause& learnt, int& bt_level) {
        learnt.clear();
        learnt.push_back(0);  // placeholder for the asserting literal
        int counter = 0;
        Lit p = 0;
        size_t idx = trail.size();
        std::vector<int> touched;
        do {
            const Clause& c = db[confl];
            bump_clause(confl);
            for (Lit q : c) {
                if (q == p) continue;
                int v = var_of(q);
                if (!seen[v] && level[v] > 0) {
                    seen[v] = 1;
                    touched.push_back(v);
                    bump_var(v);
                    if (level[v] >= decision_level())
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            while (!seen[var_of(trail[idx - 1])]) --idx;
            p = trail[idx - 1];
            --idx;
            confl = reason[var_of(p)];
            seen[var_of(p)] = 0;
            --counter;
        } while (counter > 0);
        learnt[0] = neg(p);

        bt_level = 0;
        if (learnt.size() > 1) {
            size_t max_i = 1;
            for (size_t i = 2; i < learnt.size(); ++i)
                if (level[var_of(learnt[i])] > level[var_of(learnt[max_i])]) max_i = i;
            std::swap(learnt[1], learnt[max_i]);
            bt_level = level[var_of(learnt[1])];
        }
        for (int v : touched) seen[v] = 0;
    }

    // Builds the subset of assumptions responsible for forcing `p` false.
    // `p` is returned as supplied by the caller.
    std::vector<Lit> analyze_final(Lit p) {
        std::vector<Lit> core{p};
        if (decision_level() == 0) return core;
        std::vector<int> touched;
        seen[var_of(p)] = 1;
        touched.push_back(var_of(p));
        for (size_t i = trail.size(); i-- > static_cast<size_t>(trail_lim[0]);) {
            int v = var_of(trail[i]);
            if (!seen[v]) continue;
            if (reason[v] == -1) {
                // Decisions during the assumption prefix are assumptions.
                if (trail[i] != p) core.push_back(trail[i]);
            } else {
                for (Lit q : db[static_cast<size_t>(reason[v])]) {
                    int qv = var_of(q);
                    if (!seen[qv] && level[qv] > 0) {
                        seen[qv] = 1;
                        touched.push_back(qv);
                    }
                }
            }
        }
        for (int v : touched) seen[v] = 0;
        return core;
    }

    bool clause_locked(int ci) const {
        for (Lit l : db[ci]) {
            int v = var_of(l);
            if (assigns[v] != kUndef && reason[v] == ci) return true;
        }
        return false;
    }

    void reduce_learned() {
        if (learned_live < 3000) return;
        std::vector<int> idx;
        for (int ci = 0; ci < static_cast<int>(db.size()); ++ci)
            if (learned[ci] && !removed[ci] && db[ci].size() > 2 && !clause_locked(ci))
                idx.push_back(ci);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return clause_act[a] < clause_act[b]; });
        idx.resize(idx.size() / 2);
        for (int ci : idx) {
            removed[ci] = 1;
            --learned_live;
        }
    }

    SolveResult search() {
        SolveResult res;
        int64_t conflicts = 0;
        int64_t restart_count = 0;
        int64_t restart_limit = 100 * luby(restart_count);

        for (;;) {
            int confl = propagate();
            if (confl != -1) {
                ++conflicts;
                if (decision_level() == 0) {
                    res.status = Status::Unsat;
                    return res;  // empty core: clauses alone unsatisfiable
                }
                Clause learnt;
                int bt;
                analyze(confl, learnt, bt);
                cancel_until(bt);
                if (learnt.size() == 1) {
                    if (value(learnt[0]) == kFalse) {
                        // Root level contradicts the derived unit: the
                        // clauses alone are unsatisfiable.
                        res.status = Status::Unsat;
                        return res;
                    }
                    if (value(learnt[0]) == kUndef) enqueue(learnt[0], -1);
                } else {
                    int ci = push_clause(std::move(learnt), true);
                    bump_clause(ci);
                    if (value(db[ci][0]) == kUndef) enqueue(db[ci][0], ci);
                }
                var_inc /= 0.95;
                cla_inc /= 0.999;
                if (conflict_budget >= 0 && conflicts > conflict_budget) {
                    res.status = Status::Timeout;
                    return res;
                }
                if (conflicts >= restart_limit) {
                    ++restart_count;
                    restart_limit = conflicts + 100 * luby(restart_count);
                    int keep = std::min<int>(static_cast<int>(assumptions.size()),
                                             decision_level());
                    cancel_until(keep);
                    reduce_learned();
                }
                continue;
            }

            if (decision_level() < static_cast<int>(assumptions.size())) {
                Lit p = assumptions[static_cast<size_t>(decision_level())];
                if (value(p) == kTrue) {
                    trail_lim.push_back(static_cast<int>(trail.size()));  // dummy level
                } else if (value(p) == kFalse) {
                    res.status = Status::Unsat;
                    res.core = analyze_final(p);
                    return res;
                } else {
                    trail_lim.push_back(static_cast<int>(trail.size()));
                    enqueue(p, -1);
                }
                continue;
            }

            // Pick a branching variable.
            int v = -1;
            while (!heap.empty()) {
                int cand = heap_pop();
                if (assigns[cand] == kUndef) {
                    v = cand;
                    break;
                }
            }
            if (v == -1) {
                res.status = Status::Sat;
                res.model.assign(static_cast<size_t>(nvars) + 1, false);
                for (int i = 1; i <= nvars; ++i) res.model[i] = assigns[i] == kTrue;
                return res;
            }
            trail_lim.push_back(static_cast<int>(trail.size()));
            enqueue(saved_phase[v] == kTrue ? v : -v, -1);
        }
    }
};

Solver::Solver() : impl_(std::make_unique<Impl>()) {
    impl_->assigns.push_back(kUndef);  // index 0 unused
    impl_->level.push_back(0);
    impl_->reason.push_back(-1);
    impl_->activity.push_back(0.0);
    impl_->saved_phase.push_back(kFalse);
    impl_->heap_pos.push_back(-1);
    impl_->seen.push_back(0);
}

Solver::Solver(const Cnf& cnf) : Solver() { add_cnf(cnf); }

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

int Solver::new_var() { return impl_->new_var(); }
int Solver::num_vars() const { return impl_->nvars; }

void Solver::add_clause(Clause c) {
    impl_->cancel_until(0);
    impl_->add_clause(std::move(c));
}

void Solver::add_cnf(const Cnf& cnf) {
    while (impl_->nvars < cnf.var_count) impl_->new_var();
    impl_->cancel_until(0);
    for (const Clause& c : cnf.clauses) impl_->add_clause(c);
}

void Solver::set_seed(uint64_t seed) { impl_->seed = seed; }

void Solver::set_default_phase(int var, bool phase) {
    impl_->saved_phase[static_cast<size_t>(var)] = phase ? kTrue : kFalse;
}

void Solver::set_conflict_budget(int64_t budget) { impl_->conflict_budget = budget; }

SolveResult Solver::solve(const std::vector<Lit>& assumptions) {
    Impl& s = *impl_;
    s.cancel_until(0);
    if (!s.ok) {
        SolveResult res;
        res.status = Status::Unsat;
        return res;
    }
    if (s.seed != 0 && !s.jitter_applied) {
        // Order diversification: a small deterministic perturbation of the
        // initial activities, standing in for random solver restarts.
        for (int v = 1; v <= s.nvars; ++v)
            s.activity[v] += 1e-9 * static_cast<double>(splitmix64(s.seed * 0x10001ULL + v) % 4096);
        s.jitter_applied = true;
    }
    for (Lit l : assumptions)
        if (l == 0 || var_of(l) > s.nvars) throw std::invalid_argument("bad assumption literal");
    s.heap.clear();
    for (int v = 1; v <= s.nvars; ++v) s.heap_pos[v] = -1;
    for (int v = 1; v <= s.nvars; ++v)
        if (s.assigns[v] == kUndef) s.heap_insert(v);
    s.assumptions = assumptions;
    SolveResult res = s.search();
    s.cancel_until(0);
    return res;
}

bool brute_force_satisfiable(const Cnf& cnf, std::vector<bool>* model) {
    if (cnf.var_count > 24) throw std::invalid_argument("too many variables for brute force");
    uint64_t total = uint64_t(1) << cnf.var_count;
    std::vector<bool> assign(static_cast<size_t>(cnf.var_count) + 1, false);
    for (uint64_t m = 0; m < total; ++m) {
        for (int v = 1; v <= cnf.var_count; ++v) assign[v] = (m >> (v - 1)) & 1;
        if (cnf.satisfied_by(assign)) {
            if (model) *model = assign;
            return true;
        }
    }
    return false;
}

}  // namespace faultsat::sat
