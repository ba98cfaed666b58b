#include "faultsat/lang/ast.hpp"

namespace faultsat::lang {

const char* to_string(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::And: return "&&";
        case BinOp::Or: return "||";
    }
    return "?";
}

const char* to_string(UnOp op) { return op == UnOp::Neg ? "-" : "!"; }

ExprPtr Expr::int_lit(long long v, Span s) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::IntLit;
    e->int_value = v;
    e->span = s;
    return e;
}

ExprPtr Expr::bool_lit(bool v, Span s) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::BoolLit;
    e->bool_value = v;
    e->span = s;
    return e;
}

ExprPtr Expr::var(std::string name, Span s) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(name);
    e->span = s;
    return e;
}

ExprPtr Expr::index(std::string array, ExprPtr subscript, Span s) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Index;
    e->name = std::move(array);
    e->args.push_back(std::move(subscript));
    e->span = s;
    return e;
}

ExprPtr Expr::unary(UnOp op, ExprPtr operand, Span s) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Unary;
    e->un_op = op;
    e->args.push_back(std::move(operand));
    e->span = s;
    return e;
}

ExprPtr Expr::binary(BinOp op, ExprPtr lhs, ExprPtr rhs, Span s, Span op_s) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Binary;
    e->bin_op = op;
    e->args.push_back(std::move(lhs));
    e->args.push_back(std::move(rhs));
    e->span = s;
    e->op_span = op_s;
    return e;
}

ExprPtr Expr::call(std::string callee, std::vector<ExprPtr> call_args, Span s) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Call;
    e->name = std::move(callee);
    e->args = std::move(call_args);
    e->span = s;
    return e;
}

ExprPtr clone(const Expr& e) {
    auto c = std::make_unique<Expr>();
    c->kind = e.kind;
    c->span = e.span;
    c->int_value = e.int_value;
    c->bool_value = e.bool_value;
    c->name = e.name;
    c->bin_op = e.bin_op;
    c->un_op = e.un_op;
    c->op_span = e.op_span;
    c->args.reserve(e.args.size());
    for (const auto& a : e.args) c->args.push_back(clone(*a));
    return c;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
        case Expr::Kind::IntLit:
            if (a.int_value != b.int_value) return false;
            break;
        case Expr::Kind::BoolLit:
            if (a.bool_value != b.bool_value) return false;
            break;
        case Expr::Kind::Var:
        case Expr::Kind::Index:
        case Expr::Kind::Call:
            if (a.name != b.name) return false;
            break;
        case Expr::Kind::Unary:
            if (a.un_op != b.un_op) return false;
            break;
        case Expr::Kind::Binary:
            if (a.bin_op != b.bin_op) return false;
            break;
    }
    for (size_t i = 0; i < a.args.size(); ++i)
        if (!structurally_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

StmtPtr clone(const Stmt& s) {
    auto c = std::make_unique<Stmt>();
    c->kind = s.kind;
    c->span = s.span;
    c->name = s.name;
    c->array_size = s.array_size;
    if (s.index) c->index = clone(*s.index);
    if (s.value) c->value = clone(*s.value);
    if (s.cond) c->cond = clone(*s.cond);
    for (const auto& b : s.body) c->body.push_back(clone(*b));
    for (const auto& b : s.else_body) c->else_body.push_back(clone(*b));
    for (const auto& a : s.call_args) c->call_args.push_back(clone(*a));
    return c;
}

namespace {

bool opt_expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return structurally_equal(*a, *b);
}

bool stmt_list_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!structurally_equal(*a[i], *b[i])) return false;
    return true;
}

}  // namespace

bool structurally_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.name != b.name || a.array_size != b.array_size) return false;
    if (!opt_expr_equal(a.index, b.index) || !opt_expr_equal(a.value, b.value) ||
        !opt_expr_equal(a.cond, b.cond))
        return false;
    if (a.call_args.size() != b.call_args.size()) return false;
    for (size_t i = 0; i < a.call_args.size(); ++i)
        if (!structurally_equal(*a.call_args[i], *b.call_args[i])) return false;
    return stmt_list_equal(a.body, b.body) && stmt_list_equal(a.else_body, b.else_body);
}

const Function* TranslationUnit::find_function(const std::string& name) const {
    for (const auto& f : functions)
        if (f.name == name) return &f;
    return nullptr;
}

bool structurally_equal(const TranslationUnit& a, const TranslationUnit& b) {
    if (a.functions.size() != b.functions.size()) return false;
    for (size_t i = 0; i < a.functions.size(); ++i) {
        const Function& fa = a.functions[i];
        const Function& fb = b.functions[i];
        if (fa.name != fb.name || fa.params != fb.params || fa.returns_value != fb.returns_value)
            return false;
        if (!stmt_list_equal(fa.body, fb.body)) return false;
    }
    return stmt_list_equal(a.main_body, b.main_body);
}

}  // namespace faultsat::lang
