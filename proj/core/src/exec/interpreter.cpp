#include "faultsat/exec/interpreter.hpp"

#include <set>
#include <stdexcept>

#include "faultsat/exec/arith.hpp"

namespace faultsat::exec {

namespace {

using lang::Expr;

struct State {
    int width;
    std::map<std::string, long long> scalars;
    std::map<std::string, std::vector<long long>> arrays;

    long long eval_int(const Expr& e) const;
    bool eval_bool(const Expr& e) const;
};

long long State::eval_int(const Expr& e) const {
    switch (e.kind) {
        case Expr::Kind::IntLit: return wrap(e.int_value, width);
        case Expr::Kind::Var: {
            auto it = scalars.find(e.name);
            return it == scalars.end() ? 0 : it->second;
        }
        case Expr::Kind::Index: {
            auto it = arrays.find(e.name);
            if (it == arrays.end()) return 0;
            long long i = eval_int(*e.args[0]);
            if (i < 0 || i >= static_cast<long long>(it->second.size())) return 0;
            return it->second[static_cast<size_t>(i)];
        }
        case Expr::Kind::Unary:
            if (e.un_op != lang::UnOp::Neg) throw std::logic_error("'!' in int context");
            return wrap(-eval_int(*e.args[0]), width);
        case Expr::Kind::Binary: {
            long long a = eval_int(*e.args[0]);
            long long b = eval_int(*e.args[1]);
            switch (e.bin_op) {
                case lang::BinOp::Add: return wrap(a + b, width);
                case lang::BinOp::Sub: return wrap(a - b, width);
                case lang::BinOp::Mul: return wrap(a * b, width);
                case lang::BinOp::Div: return wrap(div_total(a, b, width), width);
                case lang::BinOp::Mod: return wrap(mod_total(a, b, width), width);
                default: break;
            }
            throw std::logic_error("bool operator in int context");
        }
        default: throw std::logic_error("bool expression in int context");
    }
}

bool State::eval_bool(const Expr& e) const {
    switch (e.kind) {
        case Expr::Kind::BoolLit: return e.bool_value;
        case Expr::Kind::Unary:
            if (e.un_op != lang::UnOp::Not) throw std::logic_error("'-' in bool context");
            return !eval_bool(*e.args[0]);
        case Expr::Kind::Binary: {
            switch (e.bin_op) {
                case lang::BinOp::And: return eval_bool(*e.args[0]) && eval_bool(*e.args[1]);
                case lang::BinOp::Or: return eval_bool(*e.args[0]) || eval_bool(*e.args[1]);
                default: break;
            }
            long long a = eval_int(*e.args[0]);
            long long b = eval_int(*e.args[1]);
            switch (e.bin_op) {
                case lang::BinOp::Lt: return a < b;
                case lang::BinOp::Le: return a <= b;
                case lang::BinOp::Gt: return a > b;
                case lang::BinOp::Ge: return a >= b;
                case lang::BinOp::Eq: return a == b;
                case lang::BinOp::Ne: return a != b;
                default: throw std::logic_error("int operator in bool context");
            }
        }
        default: throw std::logic_error("int expression in bool context");
    }
}

}  // namespace

ExecutionResult execute(const lang::Program& program, const TestInput& test) {
    // The test must cover declared inputs exactly.
    std::vector<std::string> expected = program.input_names();
    std::set<std::string> expected_set(expected.begin(), expected.end());
    for (const auto& [name, _] : test.values)
        if (expected_set.count(name) == 0)
            throw std::invalid_argument("test assigns undeclared input '" + name + "'");
    for (const auto& name : expected)
        if (test.values.count(name) == 0)
            throw std::invalid_argument("test does not cover input '" + name + "'");

    State st;
    st.width = program.width;
    for (const auto& s : program.scalars) st.scalars[s.name] = 0;
    for (const auto& a : program.arrays)
        st.arrays[a.name] = std::vector<long long>(static_cast<size_t>(a.length), 0);
    for (const auto& s : program.scalars)
        if (s.is_input) st.scalars[s.name] = wrap(test.values.at(s.name), st.width);
    for (const auto& a : program.arrays)
        if (a.is_input)
            for (int i = 0; i < a.length; ++i)
                st.arrays[a.name][static_cast<size_t>(i)] =
                    wrap(test.values.at(a.name + "[" + std::to_string(i) + "]"), st.width);

    ExecutionResult res;
    auto snapshot_state = [&] {
        for (const auto& [name, v] : st.scalars) res.final_state[name] = v;
        for (const auto& [name, cells] : st.arrays)
            for (size_t i = 0; i < cells.size(); ++i)
                res.final_state[name + "[" + std::to_string(i) + "]"] = cells[i];
    };

    int loc = program.initial_location;
    while (true) {
        for (int aid : program.checks_at[loc]) {
            const lang::AssertionSpec& spec = program.assertions[aid];
            if (!st.eval_bool(*spec.predicate)) {
                if (spec.owner_transition >= 0) res.trace.push_back(spec.owner_transition);
                res.verdict = Verdict::Fail;
                res.failed_assertion = spec.id;
                res.fail_line = spec.line;
                snapshot_state();
                return res;
            }
        }

        const std::vector<int>& out = program.out_edges[loc];
        if (out.empty()) break;  // exit location

        const lang::Transition* taken = nullptr;
        for (int tid : out) {
            const lang::Transition& t = program.transitions[tid];
            if (t.kind == lang::TransKind::Guard) {
                bool c = st.eval_bool(*t.cond);
                if (c != t.cond_negated) {
                    taken = &t;
                    break;
                }
                continue;
            }
            if (t.kind == lang::TransKind::Assume) {
                if (st.eval_bool(*t.cond)) {
                    taken = &t;
                    break;
                }
                // Blocked: an unwinding assumption means the bound was too
                // small; a user assume makes the run vacuously passing.
                res.verdict = t.artifact ? Verdict::BoundExceeded : Verdict::Pass;
                snapshot_state();
                return res;
            }
            taken = &t;
            break;
        }
        if (!taken) throw std::logic_error("stuck: no enabled transition");

        switch (taken->kind) {
            case lang::TransKind::Assign:
                st.scalars[taken->var] = st.eval_int(*taken->rhs);
                break;
            case lang::TransKind::Store: {
                long long i = st.eval_int(*taken->index);
                long long v = st.eval_int(*taken->rhs);
                auto& cells = st.arrays[taken->var];
                if (i >= 0 && i < static_cast<long long>(cells.size()))
                    cells[static_cast<size_t>(i)] = v;
                break;
            }
            default: break;
        }
        res.trace.push_back(taken->id);
        loc = taken->target;
    }

    res.verdict = Verdict::Pass;
    snapshot_state();
    return res;
}

}  // namespace faultsat::exec
