#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultsat/enc/bitblast.hpp"
#include "faultsat/exec/interpreter.hpp"
#include "faultsat/lang/program.hpp"
#include "faultsat/maxsat/instance.hpp"

namespace faultsat::enc {

struct EncodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// The supplied trace does not start at the entry or does not chain.
struct DisconnectedTrace : EncodeError {
    using EncodeError::EncodeError;
};
// Localization instances require a test that actually fails the assertion.
struct NotAFailingTest : EncodeError {
    using EncodeError::EncodeError;
};
// Loop-iteration weighting requires an instance built at iteration
// granularity (its groups carry unrolling indices).
struct GranularityError : EncodeError {
    using EncodeError::EncodeError;
};
// An expression form the circuit encoder cannot handle (e.g. a call that
// survived inlining).
struct UnsupportedOperator : EncodeError {
    using EncodeError::EncodeError;
};

// One selector per statement (shared by all unrolled copies), or one per
// (statement, unrolling index) pair.
enum class Granularity { Statement, Iteration };

// ---------------------------------------------------------------------------
// Single-path formula over one executed trace: fresh variable copies per
// assignment, guard and assume steps as unit constraints. Satisfiable iff
// some input drives execution down exactly this path.
struct TraceFormula {
    sat::Cnf cnf;
    // Version-0 bits of declared inputs (scalars "x", array cells "a[i]").
    std::map<std::string, BitVec> inputs;
    // Final version of every scalar and array cell after the last step.
    std::map<std::string, BitVec> finals;
};

TraceFormula build_trace_formula(const lang::Program& program,
                                 const std::vector<int>& trace);

// ---------------------------------------------------------------------------
// Whole-program encoding of the unrolled control-flow graph: one guard bit
// per location, branch outcomes as free bits tied to their conditions, SSA
// variable copies merged at joins. Paths that violate an unwinding
// assumption simply die (their downstream guards are false).

// Reachability/violation bits for one assertion instance.
struct AssertionProbe {
    int spec_id = 0;
    sat::Lit guard = 0;     // control reaches the assertion's location
    sat::Lit pred = 0;      // the predicate holds there
    sat::Lit violated = 0;  // guard && !pred
};

struct ProgramFormula {
    sat::Cnf cnf;
    std::map<std::string, BitVec> inputs;
    std::vector<AssertionProbe> probes;  // ordered by assertion id
};

// The bare program formula: all statements hard, inputs free, nothing
// asserted about the assertion probes.
ProgramFormula encode_program_formula(const lang::Program& program);

struct BmcOptions {
    // Assertion ids whose violation is asserted (disjunctively); empty
    // means every assertion in the program.
    std::set<int> targets;
    // Additionally require every assertion instance *before* the earliest
    // target to hold, so a found input fails the target first under replay.
    bool require_earlier_pass = false;
    // Input valuations to exclude (hard blocking of previous findings).
    std::vector<exec::TestInput> blocked;
};

// Program formula plus the bounded-model-checking side conditions: some
// targeted assertion instance is reached and violated.
ProgramFormula encode_bmc(const lang::Program& program, const BmcOptions& opts);

// Reads the input valuation off a model of a ProgramFormula.
exec::TestInput decode_inputs(const ProgramFormula& pf,
                              const std::vector<bool>& model);

// ---------------------------------------------------------------------------
// Tagged twin of encode_program_formula: the same clause stream, but every
// clause of a relaxable (untrusted, non-skip, non-assume) statement carries
// the negated selector of its clause group, so setting the selector false
// disables the whole group. Assumes — user-written or unwinding — stay hard:
// they are specification, not candidate faults. Nothing is pinned or
// asserted; soft unit clauses over the selectors (weight alpha) are
// pre-filled.
//
// Variable layout: 1 = constant TRUE, then one selector per clause group in
// statement order, then the program bits (which line up one-to-one with the
// variables of encode_program_formula shifted by the selector count).
struct SelectoredFormula {
    maxsat::MaxSatInstance instance;
    std::map<std::string, BitVec> inputs;
    std::vector<AssertionProbe> probes;  // ordered by assertion id
};

SelectoredFormula encode_selectored(const lang::Program& program,
                                    Granularity granularity = Granularity::Statement,
                                    long long alpha = 1);

// ---------------------------------------------------------------------------
// Localization instance: the selectored formula with the failing test's
// inputs and every assertion instance pinned hard. Relaxing (falsifying)
// a selector is then the only way to make the formula satisfiable, at the
// cost of that selector's soft weight.
//
// Throws NotAFailingTest unless executing `test` fails exactly the given
// assertion, and DisconnectedTrace if the supplied trace does not chain.
maxsat::MaxSatInstance build_instance(const lang::Program& program,
                                      const std::vector<int>& trace,
                                      const exec::TestInput& test,
                                      int assertion_id,
                                      Granularity granularity = Granularity::Statement,
                                      long long alpha = 1);

// Reweights the soft clauses of an iteration-granularity instance: a
// selector for unrolling index k gets weight alpha + eta - k, so earlier
// iterations cost strictly more to blame; selectors outside any loop get
// alpha + eta. Throws GranularityError when no group carries an unrolling
// index.
void assign_loop_weights(maxsat::MaxSatInstance& instance, long long alpha,
                         int eta);

}  // namespace faultsat::enc
