#include "faultsat/loc/localize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "faultsat/sat/solver.hpp"

namespace faultsat::loc {

namespace {

std::vector<RankEntry> build_ranking(const std::vector<TestRun>& runs) {
    std::map<std::pair<std::string, int>, int> counts;
    for (const TestRun& run : runs) {
        std::set<std::pair<std::string, int>> in_run;
        for (const maxsat::Comss& comss : run.iterations)
            for (const maxsat::Location& where : comss.statements)
                in_run.emplace(where.file, where.line);
        for (const auto& key : in_run) ++counts[key];
    }
    std::vector<RankEntry> out;
    out.reserve(counts.size());
    for (const auto& [key, n] : counts)
        out.push_back(RankEntry{key.first, key.second, n});
    std::sort(out.begin(), out.end(),
              [](const RankEntry& a, const RankEntry& b) {
                  if (a.count != b.count) return a.count > b.count;
                  if (a.line != b.line) return a.line < b.line;
                  return a.file < b.file;
              });
    return out;
}

}  // namespace

CounterexampleResult generate_counterexample(
    const lang::Program& program, const CounterexampleOptions& options) {
    enc::BmcOptions bmc;
    if (options.target) {
        bmc.targets = {*options.target};
        bmc.require_earlier_pass = true;
    }
    bmc.blocked = options.blocked;
    enc::ProgramFormula pf = enc::encode_bmc(program, bmc);

    sat::Solver solver;
    solver.set_seed(options.seed);
    if (options.conflict_budget >= 0)
        solver.set_conflict_budget(options.conflict_budget);
    solver.add_cnf(pf.cnf);
    solver.add_clause({enc::kTrue});

    CounterexampleResult out;
    sat::SolveResult res = solver.solve({});
    if (res.status != sat::Status::Sat) return out;

    out.test = enc::decode_inputs(pf, res.model);
    exec::ExecutionResult replay = exec::execute(program, out.test);
    if (replay.verdict != exec::Verdict::Fail)
        throw std::logic_error("counterexample replay did not fail");
    if (options.target && replay.failed_assertion != *options.target)
        throw std::logic_error("counterexample replay failed the wrong check");
    out.found = true;
    out.assertion_id = replay.failed_assertion;
    out.trace = std::move(replay.trace);
    return out;
}

LocalizationReport localize(const lang::Program& program,
                            const exec::TestInput& test, int assertion_id,
                            const LocalizeOptions& options) {
    if (options.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be positive");
    maxsat::MaxSatInstance inst = enc::build_instance(
        program, {}, test, assertion_id, options.granularity, options.alpha);
    if (options.loop_weights)
        enc::assign_loop_weights(inst, options.alpha, program.unroll_bound);

    maxsat::PmaxsatOptions po;
    po.seed = options.seed;
    po.conflict_budget = options.conflict_budget;

    LocalizationReport report;
    for (int round = 0; round < options.max_iterations; ++round) {
        maxsat::PmaxsatResult res = maxsat::solve_pmaxsat(inst, po);
        if (res.status == maxsat::PmaxsatStatus::Timeout) break;
        if (res.status == maxsat::PmaxsatStatus::HardUnsat ||
            res.comss.empty()) {
            report.exhausted = true;  // nothing (more) to disable
            break;
        }
        report.iterations.push_back(res.comss);
        if (res.comss.selectors.empty()) break;  // nothing to block on
        sat::Clause beta(res.comss.selectors.begin(),
                         res.comss.selectors.end());
        inst.hard.push_back(std::move(beta));
    }
    report.per_test_runs.push_back(
        TestRun{0, report.iterations, report.exhausted});
    report.ranking = build_ranking(report.per_test_runs);
    return report;
}

LocalizationReport rank(const lang::Program& program,
                        const std::vector<exec::TestInput>& tests,
                        const RankOptions& options) {
    std::vector<std::pair<exec::TestInput, int>> failing;
    if (!tests.empty()) {
        for (const exec::TestInput& t : tests) {
            exec::ExecutionResult r = exec::execute(program, t);
            if (r.verdict == exec::Verdict::Fail)
                failing.emplace_back(t, r.failed_assertion);
        }
    } else {
        std::vector<exec::TestInput> blocked;
        for (int i = 0; i < options.num_tests; ++i) {
            CounterexampleOptions co;
            co.seed = options.seed + static_cast<uint64_t>(i);
            co.conflict_budget = options.conflict_budget;
            co.blocked = blocked;
            CounterexampleResult cex = generate_counterexample(program, co);
            if (!cex.found) break;
            failing.emplace_back(cex.test, cex.assertion_id);
            blocked.push_back(std::move(cex.test));
        }
    }
    if (failing.empty())
        throw NoFailingTests("no failing tests to localize");

    LocalizationReport report;
    for (size_t i = 0; i < failing.size(); ++i) {
        LocalizeOptions lo = options;
        lo.seed = options.seed + static_cast<uint64_t>(i);
        LocalizationReport run =
            localize(program, failing[i].first, failing[i].second, lo);
        report.per_test_runs.push_back(TestRun{
            static_cast<int>(i), std::move(run.iterations), run.exhausted});
    }
    report.iterations = report.per_test_runs.front().iterations;
    report.exhausted = report.per_test_runs.front().exhausted;
    report.ranking = build_ranking(report.per_test_runs);
    return report;
}

}  // namespace faultsat::loc
