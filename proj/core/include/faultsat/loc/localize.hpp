#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultsat/enc/encode.hpp"
#include "faultsat/exec/interpreter.hpp"
#include "faultsat/lang/program.hpp"
#include "faultsat/maxsat/wpm1.hpp"

namespace faultsat::loc {

// rank() was given (or could generate) no test that fails an assertion.
struct NoFailingTests : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Counterexample search: bounded model checking over the unrolled program.

struct CounterexampleOptions {
    // Fail this specific assertion (earlier checks are then required to
    // pass, so the replay faults exactly here); nullopt = any assertion.
    std::optional<int> target;
    uint64_t seed = 0;
    int64_t conflict_budget = -1;  // negative = unlimited
    // Input valuations to exclude (previously found tests).
    std::vector<exec::TestInput> blocked;
};

struct CounterexampleResult {
    bool found = false;
    exec::TestInput test;    // decoded failing input
    int assertion_id = -1;   // assertion the replay fails
    std::vector<int> trace;  // interpreter replay of `test`
};

// Solves the program formula with some targeted assertion reached and
// violated. On sat, decodes the inputs and replays them; the replayed run is
// guaranteed to fail (and to fail the target when one was given). Returns
// found=false when no violation exists within the unroll bound, or when the
// conflict budget expires.
CounterexampleResult generate_counterexample(
    const lang::Program& program, const CounterexampleOptions& options = {});

// ---------------------------------------------------------------------------
// Correction-set enumeration on one failing test.

struct LocalizeOptions {
    enc::Granularity granularity = enc::Granularity::Statement;
    long long alpha = 1;
    // Reweight iteration-granularity selectors with alpha + bound - k so
    // blame lands on the latest sufficient loop iteration.
    bool loop_weights = false;
    int max_iterations = 32;
    uint64_t seed = 0;
    int64_t conflict_budget = -1;
};

struct TestRun {
    int test_id = 0;
    std::vector<maxsat::Comss> iterations;
    bool exhausted = false;
};

struct RankEntry {
    std::string file;
    int line = 0;
    int count = 0;  // number of runs whose report contains this line
};

struct LocalizationReport {
    // Correction sets of the first (or only) run, in discovery order.
    std::vector<maxsat::Comss> iterations;
    // True when enumeration ended because nothing is left (the final
    // MAX-SAT call was unsatisfiable), false when capped or timed out.
    bool exhausted = false;
    // One entry per failing test when ranking across tests.
    std::vector<TestRun> per_test_runs;
    // Location frequency across runs, count descending, ties by line.
    std::vector<RankEntry> ranking;
};

// Enumerates minimal correction sets of the localization instance: solve,
// record, add the hard blocking clause (the disjunction of the reported
// selectors), repeat until unsatisfiable or capped. Throws
// enc::NotAFailingTest unless `test` fails `assertion_id`.
LocalizationReport localize(const lang::Program& program,
                            const exec::TestInput& test, int assertion_id,
                            const LocalizeOptions& options = {});

struct RankOptions : LocalizeOptions {
    // Number of counterexamples to generate when no tests are supplied.
    int num_tests = 4;
};

// Localizes per failing test and aggregates location frequencies. With an
// empty test list, generates up to num_tests counterexamples by varying the
// seed and blocking previously found inputs. Non-failing supplied tests are
// skipped; throws NoFailingTests when none fail.
LocalizationReport rank(const lang::Program& program,
                        const std::vector<exec::TestInput>& tests,
                        const RankOptions& options = {});

}  // namespace faultsat::loc
