#include "faultsat/repair/repair.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "faultsat/exec/arith.hpp"
#include "faultsat/lang/ast.hpp"
#include "faultsat/lang/parser.hpp"

namespace faultsat::repair {

namespace {

// A mutable token discovered in the parsed source: either an integer literal
// (value set) or a binary operator (op set).
struct ConstSite {
    lang::Span span;
    long long value = 0;
};

struct OpSite {
    lang::Span span;  // the operator token
    lang::BinOp op = lang::BinOp::Add;
};

struct TokenSites {
    std::vector<ConstSite> constants;
    std::vector<OpSite> operators;
};

void collect_expr(const lang::Expr& e, TokenSites& out) {
    if (e.kind == lang::Expr::Kind::IntLit) {
        out.constants.push_back({e.span, e.int_value});
    } else if (e.kind == lang::Expr::Kind::Binary) {
        out.operators.push_back({e.op_span, e.bin_op});
    }
    for (const auto& arg : e.args) collect_expr(*arg, out);
}

void collect_stmt(const lang::Stmt& s, TokenSites& out) {
    // Assertions and assumptions are the specification being checked; their
    // tokens are never repair targets.
    if (s.kind == lang::Stmt::Kind::Assert || s.kind == lang::Stmt::Kind::Assume) return;
    if (s.index) collect_expr(*s.index, out);
    if (s.value) collect_expr(*s.value, out);
    if (s.cond) collect_expr(*s.cond, out);
    for (const auto& arg : s.call_args) collect_expr(*arg, out);
    for (const auto& child : s.body) collect_stmt(*child, out);
    for (const auto& child : s.else_body) collect_stmt(*child, out);
}

// Re-parses the program text and gathers every mutable token, sorted by
// source position. Parsing cannot fail here: `source` already lowered once.
TokenSites collect_sites(const lang::Program& program) {
    TokenSites out;
    auto tu = lang::parse(program.source, program.file);
    for (const auto& s : tu.main_body) collect_stmt(*s, out);
    for (const auto& fn : tu.functions)
        for (const auto& s : fn.body) collect_stmt(*s, out);
    auto by_pos = [](const auto& a, const auto& b) { return a.span.begin < b.span.begin; };
    std::sort(out.constants.begin(), out.constants.end(), by_pos);
    std::sort(out.operators.begin(), out.operators.end(), by_pos);
    return out;
}

// The candidate pool: every distinct (file, line) reported by localization,
// in diagnosis discovery order. Trusted statements carry no selectors and
// therefore never reach the pool.
struct Prepared {
    exec::TestInput test;
    std::vector<maxsat::Location> pool;
};

Prepared prepare(const lang::Program& program, int assertion_id,
                 const RepairOptions& options) {
    Prepared prep;
    if (options.test) {
        prep.test = *options.test;
    } else {
        loc::CounterexampleOptions cex;
        cex.target = assertion_id;
        cex.seed = options.seed;
        cex.conflict_budget = options.conflict_budget;
        auto res = loc::generate_counterexample(program, cex);
        if (!res.found)
            throw NotAFailingProgram("no failing execution within the unrolling bound");
        prep.test = res.test;
    }

    loc::LocalizeOptions lopt;
    lopt.granularity = options.granularity;
    lopt.alpha = options.alpha;
    lopt.loop_weights = options.loop_weights;
    lopt.max_iterations = options.max_iterations;
    lopt.seed = options.seed;
    lopt.conflict_budget = options.conflict_budget;
    auto report = loc::localize(program, prep.test, assertion_id, lopt);

    std::set<std::pair<std::string, int>> seen;
    for (const auto& comss : report.iterations)
        for (const auto& st : comss.statements)
            if (seen.insert({st.file, st.line}).second)
                prep.pool.push_back(maxsat::Location{st.file, st.line, std::nullopt});
    return prep;
}

std::string splice(const std::string& source, const lang::Span& span,
                   const std::string& replacement) {
    std::string out = source;
    out.replace(static_cast<size_t>(span.begin),
                static_cast<size_t>(span.end - span.begin), replacement);
    return out;
}

// Parses and lowers a mutated source at the original bound and width. A
// mutation can produce an ill-formed program only in pathological cases
// (e.g. a literal rewritten outside the lexical grammar); those mutants are
// simply not candidates.
std::optional<lang::Program> lower_mutant(const lang::Program& base,
                                          const std::string& source) {
    try {
        auto tu = lang::parse(source, base.file);
        return lang::lower_to_cfg(tu, base.unroll_bound, base.width);
    } catch (const lang::SyntaxError&) {
        return std::nullopt;
    } catch (const lang::RecursionError&) {
        return std::nullopt;
    }
}

// Builds, lowers and verifies one mutation; fills `candidate` on success.
bool try_mutation(const lang::Program& program, const exec::TestInput& test,
                  const RepairOptions& options, const maxsat::Location& where,
                  const lang::Span& span, RepairKind kind,
                  const std::string& replacement, RepairCandidate& candidate) {
    const std::string original = program.source.substr(
        static_cast<size_t>(span.begin), static_cast<size_t>(span.end - span.begin));
    const std::string patched = splice(program.source, span, replacement);
    auto mutant = lower_mutant(program, patched);
    if (!mutant) return false;
    if (!verify_fix(*mutant, {test}, options.seed, options.conflict_budget)) return false;
    candidate.location = where;
    candidate.kind = kind;
    candidate.original = original;
    candidate.replacement = replacement;
    candidate.verified = true;
    candidate.span_begin = span.begin;
    candidate.span_end = span.end;
    candidate.patched_source = patched;
    return true;
}

}  // namespace

const char* to_string(RepairKind kind) {
    switch (kind) {
        case RepairKind::ConstantIncrement: return "constant+1";
        case RepairKind::ConstantDecrement: return "constant-1";
        case RepairKind::OperatorSwap: return "operator-swap";
    }
    return "?";
}

bool verify_fix(const lang::Program& candidate,
                const std::vector<exec::TestInput>& witness_tests,
                unsigned seed, long long conflict_budget) {
    loc::CounterexampleOptions cex;
    cex.seed = seed;
    cex.conflict_budget = conflict_budget;
    if (loc::generate_counterexample(candidate, cex).found) return false;
    for (const auto& test : witness_tests)
        if (exec::execute(candidate, test).verdict != exec::Verdict::Pass) return false;
    return true;
}

std::optional<RepairCandidate> repair_off_by_one(const lang::Program& program,
                                                 int assertion_id,
                                                 const RepairOptions& options) {
    auto prep = prepare(program, assertion_id, options);
    auto sites = collect_sites(program);
    const long long lo = exec::min_value(program.width);
    const long long hi = exec::max_value(program.width);

    for (const auto& where : prep.pool) {
        for (const auto& site : sites.constants) {
            if (site.span.line != where.line) continue;
            for (long long delta : {+1LL, -1LL}) {
                const long long mutated = site.value + delta;
                if (mutated < lo || mutated > hi) continue;  // reject, never wrap
                RepairCandidate candidate;
                const auto kind = delta > 0 ? RepairKind::ConstantIncrement
                                            : RepairKind::ConstantDecrement;
                if (try_mutation(program, prep.test, options, where, site.span, kind,
                                 std::to_string(mutated), candidate))
                    return candidate;
            }
        }
    }
    return std::nullopt;
}

std::vector<RepairCandidate> repair_operator(const lang::Program& program,
                                             int assertion_id,
                                             const RepairOptions& options) {
    using lang::BinOp;
    static const std::vector<std::vector<BinOp>> families = {
        {BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne},
        {BinOp::Add, BinOp::Sub},
        {BinOp::Mul, BinOp::Div, BinOp::Mod},
        {BinOp::And, BinOp::Or},
    };

    auto prep = prepare(program, assertion_id, options);
    auto sites = collect_sites(program);

    std::vector<RepairCandidate> verified;
    std::set<std::pair<int, std::string>> tried;  // (span.begin, replacement)
    for (const auto& where : prep.pool) {
        for (const auto& site : sites.operators) {
            if (site.span.line != where.line) continue;
            for (const auto& family : families) {
                if (std::find(family.begin(), family.end(), site.op) == family.end())
                    continue;
                for (BinOp alt : family) {
                    if (alt == site.op) continue;
                    const std::string replacement = lang::to_string(alt);
                    if (!tried.insert({site.span.begin, replacement}).second) continue;
                    RepairCandidate candidate;
                    if (try_mutation(program, prep.test, options, where, site.span,
                                     RepairKind::OperatorSwap, replacement, candidate))
                        verified.push_back(std::move(candidate));
                }
            }
        }
    }
    return verified;
}

}  // namespace faultsat::repair
