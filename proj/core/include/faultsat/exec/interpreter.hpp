#pragma once

#include <map>
#include <string>
#include <vector>

#include "faultsat/lang/program.hpp"

namespace faultsat::exec {

// Concrete input valuation: scalar inputs by name, array-cell inputs as
// "name[i]". Must cover every declared input exactly.
struct TestInput {
    std::map<std::string, long long> values;
};

enum class Verdict { Pass, Fail, BoundExceeded };

struct ExecutionResult {
    Verdict verdict = Verdict::Pass;
    int failed_assertion = -1;  // AssertionSpec id when verdict == Fail
    int fail_line = 0;
    std::vector<int> trace;  // executed transition ids, in order
    std::map<std::string, long long> final_state;
};

// Deterministically replays `test` on the lowered program. Assertions at a
// location are checked before any outgoing transition executes; when an
// implicit check fails, the transition it protects is appended to the trace
// so the trace names the faulting source line. A false user assume ends the
// run vacuously (pass); a false unwinding assumption yields bound-exceeded.
// Throws std::invalid_argument if `test` does not cover the inputs exactly.
ExecutionResult execute(const lang::Program& program, const TestInput& test);

}  // namespace faultsat::exec
