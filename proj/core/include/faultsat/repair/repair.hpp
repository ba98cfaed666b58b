#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultsat/enc/encode.hpp"
#include "faultsat/exec/interpreter.hpp"
#include "faultsat/lang/program.hpp"
#include "faultsat/loc/localize.hpp"
#include "faultsat/maxsat/instance.hpp"

namespace faultsat::repair {

// Thrown when a repair is requested for a program whose target assertion has
// no failing execution within the unrolling bound (nothing to repair).
struct NotAFailingProgram : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RepairKind {
    ConstantIncrement,  // integer literal k replaced by k+1
    ConstantDecrement,  // integer literal k replaced by k-1
    OperatorSwap,       // binary operator replaced within its family
};

const char* to_string(RepairKind kind);

// A single-token source mutation together with its verification status. For
// verified candidates `patched_source` holds the complete repaired program
// text; `span_begin`/`span_end` give the byte range of `original` in the
// original source so callers can render diffs.
struct RepairCandidate {
    maxsat::Location location;
    RepairKind kind = RepairKind::ConstantIncrement;
    std::string original;
    std::string replacement;
    bool verified = false;
    int span_begin = 0;
    int span_end = 0;
    std::string patched_source;
};

struct RepairOptions {
    // Failing witness test; when absent a counterexample for the target
    // assertion is generated automatically (NotAFailingProgram if none).
    std::optional<exec::TestInput> test;
    enc::Granularity granularity = enc::Granularity::Statement;
    int alpha = 1;
    bool loop_weights = false;
    int max_iterations = 32;
    unsigned seed = 0;
    long long conflict_budget = -1;
};

// True iff bounded model checking of `candidate` (over all of its
// assertions, at its own unrolling bound) finds no counterexample and every
// witness test passes in the interpreter.
bool verify_fix(const lang::Program& candidate,
                const std::vector<exec::TestInput>& witness_tests,
                unsigned seed = 0, long long conflict_budget = -1);

// Localizes the failure of `assertion_id`, then mutates integer literals on
// the reported lines by +1 and then -1 (in diagnosis discovery order, then
// textual order). Returns the first mutant that verifies, or nullopt when no
// off-by-one repair exists. Literals inside assert/assume statements are
// never touched, and mutations that leave the declared bit width are
// discarded rather than wrapped.
std::optional<RepairCandidate> repair_off_by_one(const lang::Program& program,
                                                 int assertion_id,
                                                 const RepairOptions& options = {});

// Localizes the failure, then tries every single-operator replacement within
// the operator families {< <= > >= == !=}, {+ -}, {* / %}, {&& ||} on the
// reported lines. Returns all verified candidates ordered by (diagnosis
// rank, textual position); the first entry is the primary suggestion.
std::vector<RepairCandidate> repair_operator(const lang::Program& program,
                                             int assertion_id,
                                             const RepairOptions& options = {});

}  // namespace faultsat::repair
