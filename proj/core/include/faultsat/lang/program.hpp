#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "faultsat/lang/ast.hpp"

namespace faultsat::lang {

enum class TransKind {
    Assign,  // var := rhs
    Store,   // var[index] := rhs
    Guard,   // taken iff cond (or !cond when cond_negated)
    Assume,  // execution continues only if cond holds
    Skip,    // no-op edge (joins, declarations, assert plumbing)
};

// Innermost unrolled-loop membership of a transition: which source loop and
// which unrolling copy (1-based) produced it.
struct LoopContext {
    int loop_id = 0;
    int iter = 1;

    friend bool operator==(const LoopContext& a, const LoopContext& b) {
        return a.loop_id == b.loop_id && a.iter == b.iter;
    }
};

struct Transition {
    int id = 0;
    int source = 0;
    int target = 0;
    TransKind kind = TransKind::Skip;

    std::string var;            // Assign target / Store array
    const Expr* rhs = nullptr;  // Assign / Store value
    const Expr* index = nullptr;  // Store subscript
    const Expr* cond = nullptr;   // Guard / Assume
    bool cond_negated = false;    // Guard: this edge is the false branch

    int statement_id = -1;  // -1 for compiler-introduced transitions
    std::optional<LoopContext> loop;
    bool artifact = false;  // true iff statement_id < 0
    int line = 0;           // origin line (owning statement, or anchor for artifacts)
};

enum class AssertKind { Explicit, ArrayBounds, DivisionGuard };

// A property checked when control reaches `location`, before any outgoing
// transition executes. Implicit checks (bounds, division) name the
// transition whose operation they protect.
struct AssertionSpec {
    int id = 0;
    int location = 0;
    const Expr* predicate = nullptr;
    AssertKind kind = AssertKind::Explicit;
    int owner_transition = -1;  // -1 for explicit asserts
    int line = 0;
    std::string text;  // rendered predicate, for messages
};

struct StatementInfo {
    int id = 0;
    int line = 0;
    std::string text;      // one-line rendering
    std::string function;  // callee name for inlined statements; empty = main
    std::optional<int> loop_id;  // innermost enclosing loop, if any
    bool trusted = false;
};

struct ScalarDecl {
    std::string name;
    bool is_input = false;
};

struct ArrayDecl {
    std::string name;
    int length = 0;
    bool is_input = false;
};

// Flat control-flow program over fixed-width ints: the common substrate for
// the interpreter and the CNF encoder. Locations are numbered so that every
// transition satisfies source < target (execution flows strictly forward
// through the unrolled graph); location 0 is the entry and num_locations-1
// the unique exit.
struct Program {
    std::string file;
    std::string source;
    int width = 8;          // bit width of every int
    int unroll_bound = 1;   // eta used at lowering time
    int num_locations = 0;
    int initial_location = 0;

    std::vector<Transition> transitions;
    std::vector<AssertionSpec> assertions;
    std::vector<StatementInfo> statements;  // index == statement id
    std::vector<ScalarDecl> scalars;
    std::vector<ArrayDecl> arrays;

    // location -> ids of outgoing transitions / assertions checked there
    std::vector<std::vector<int>> out_edges;
    std::vector<std::vector<int>> checks_at;

    // Owns every Expr referenced from transitions and assertions.
    std::vector<ExprPtr> arena;

    Program() = default;
    Program(Program&&) = default;
    Program& operator=(Program&&) = default;
    Program(const Program&) = delete;
    Program& operator=(const Program&) = delete;

    const ArrayDecl* find_array(const std::string& name) const;
    const ScalarDecl* find_scalar(const std::string& name) const;
    // All test-supplied value names: scalar inputs as "x", array cells "a[i]".
    std::vector<std::string> input_names() const;
};

// Lowers a parsed unit: inlines calls, unrolls every while loop eta times
// (each copy's transitions tagged with loop context 1..eta, followed by a
// hard unwinding assumption that the guard is false), flattens control flow,
// and attaches implicit bounds/division assertions (two bounds checks per
// array access, one per division or modulus).
// Throws UnrollBoundError if eta < 1.
Program lower_to_cfg(const TranslationUnit& tu, int eta, int width = 8);

// Marks statements on the given lines or inside the given functions as
// trusted: the encoder emits their clauses hard, with no selector.
void mark_trusted(Program& program, const std::set<int>& lines,
                  const std::set<std::string>& functions);

}  // namespace faultsat::lang
