#include "faultsat/lang/printer.hpp"

#include <sstream>

namespace faultsat::lang {

namespace {

int precedence(const Expr& e) {
    if (e.kind == Expr::Kind::Unary) return 5;
    if (e.kind != Expr::Kind::Binary) return 6;
    switch (e.bin_op) {
        case BinOp::Or: return 0;
        case BinOp::And: return 1;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge:
        case BinOp::Eq:
        case BinOp::Ne: return 2;
        case BinOp::Add:
        case BinOp::Sub: return 3;
        case BinOp::Mul:
        case BinOp::Div:
        case BinOp::Mod: return 4;
    }
    return 6;
}

void print_expr(const Expr& e, std::ostream& os, int parent_prec, bool right_operand) {
    int prec = precedence(e);
    // Parenthesize when binding weaker than the context, or equal on the
    // right of a left-associative operator, or any nested comparison
    // (comparisons are non-associative in the grammar).
    bool parens = false;
    if (e.kind == Expr::Kind::Binary) {
        parens = prec < parent_prec || (prec == parent_prec && right_operand) ||
                 (prec == 2 && parent_prec == 2);
    }
    if (parens) os << '(';
    switch (e.kind) {
        case Expr::Kind::IntLit: os << e.int_value; break;
        case Expr::Kind::BoolLit: os << (e.bool_value ? "true" : "false"); break;
        case Expr::Kind::Var: os << e.name; break;
        case Expr::Kind::Index:
            os << e.name << '[';
            print_expr(*e.args[0], os, 0, false);
            os << ']';
            break;
        case Expr::Kind::Unary:
            os << to_string(e.un_op);
            // Guard "-(-x)" and "-(x+y)"; unary binds tighter than binary.
            print_expr(*e.args[0], os, 5, true);
            break;
        case Expr::Kind::Binary:
            print_expr(*e.args[0], os, prec, false);
            os << ' ' << to_string(e.bin_op) << ' ';
            print_expr(*e.args[1], os, prec, true);
            break;
        case Expr::Kind::Call:
            os << e.name << '(';
            for (size_t i = 0; i < e.args.size(); ++i) {
                if (i) os << ", ";
                print_expr(*e.args[i], os, 0, false);
            }
            os << ')';
            break;
    }
    if (parens) os << ')';
}

void indent_to(std::ostream& os, int indent) {
    for (int i = 0; i < indent; ++i) os << "    ";
}

void print_block(const std::vector<StmtPtr>& body, std::ostream& os, int indent);

void print_stmt(const Stmt& s, std::ostream& os, int indent) {
    indent_to(os, indent);
    switch (s.kind) {
        case Stmt::Kind::InputDecl:
            os << "input int " << s.name;
            if (s.array_size >= 0) os << '[' << s.array_size << ']';
            os << ";\n";
            break;
        case Stmt::Kind::VarDecl:
            os << "int " << s.name;
            if (s.array_size >= 0) os << '[' << s.array_size << ']';
            if (s.value) {
                os << " = ";
                print_expr(*s.value, os, 0, false);
            }
            os << ";\n";
            break;
        case Stmt::Kind::Assign:
            os << s.name << " = ";
            print_expr(*s.value, os, 0, false);
            os << ";\n";
            break;
        case Stmt::Kind::Store:
            os << s.name << '[';
            print_expr(*s.index, os, 0, false);
            os << "] = ";
            print_expr(*s.value, os, 0, false);
            os << ";\n";
            break;
        case Stmt::Kind::If:
            os << "if (";
            print_expr(*s.cond, os, 0, false);
            os << ") ";
            print_block(s.body, os, indent);
            if (!s.else_body.empty()) {
                os << " else ";
                print_block(s.else_body, os, indent);
            }
            os << '\n';
            break;
        case Stmt::Kind::While:
            os << "while (";
            print_expr(*s.cond, os, 0, false);
            os << ") ";
            print_block(s.body, os, indent);
            os << '\n';
            break;
        case Stmt::Kind::Assert:
        case Stmt::Kind::Assume:
            os << (s.kind == Stmt::Kind::Assert ? "assert(" : "assume(");
            print_expr(*s.value, os, 0, false);
            os << ");\n";
            break;
        case Stmt::Kind::CallStmt:
            os << s.name << '(';
            for (size_t i = 0; i < s.call_args.size(); ++i) {
                if (i) os << ", ";
                print_expr(*s.call_args[i], os, 0, false);
            }
            os << ");\n";
            break;
        case Stmt::Kind::Return:
            os << "return ";
            print_expr(*s.value, os, 0, false);
            os << ";\n";
            break;
    }
}

void print_block(const std::vector<StmtPtr>& body, std::ostream& os, int indent) {
    os << "{\n";
    for (const auto& s : body) print_stmt(*s, os, indent + 1);
    indent_to(os, indent);
    os << '}';
}

}  // namespace

std::string to_source(const Expr& e) {
    std::ostringstream os;
    print_expr(e, os, 0, false);
    return os.str();
}

std::string to_source(const Stmt& s, int indent) {
    std::ostringstream os;
    print_stmt(s, os, indent);
    return os.str();
}

std::string to_source(const TranslationUnit& tu) {
    std::ostringstream os;
    for (const auto& f : tu.functions) {
        os << (f.returns_value ? "int " : "void ") << f.name << '(';
        for (size_t i = 0; i < f.params.size(); ++i) {
            if (i) os << ", ";
            os << "int " << f.params[i];
        }
        os << ") ";
        print_block(f.body, os, 0);
        os << "\n\n";
    }
    for (const auto& s : tu.main_body) print_stmt(*s, os, 0);
    return os.str();
}

std::string one_line(const Stmt& s) {
    std::ostringstream os;
    switch (s.kind) {
        case Stmt::Kind::If:
            os << "if (" << to_source(*s.cond) << ") ...";
            break;
        case Stmt::Kind::While:
            os << "while (" << to_source(*s.cond) << ") ...";
            break;
        default: {
            std::string text = to_source(s, 0);
            if (!text.empty() && text.back() == '\n') text.pop_back();
            os << text;
            break;
        }
    }
    return os.str();
}

}  // namespace faultsat::lang
