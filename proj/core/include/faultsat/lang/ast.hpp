#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace faultsat::lang {

// Half-open byte range [begin, end) into the original source text, plus the
// 1-based line/column of its first byte. Spans drive source splicing in the
// repair engine, so they must be exact.
struct Span {
    int begin = 0;
    int end = 0;
    int line = 1;
    int column = 1;
};

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnOp { Neg, Not };

// True for operators producing bool (comparisons and logical connectives).
inline bool is_bool_op(BinOp op) { return op >= BinOp::Lt; }
inline bool is_logical_op(BinOp op) { return op == BinOp::And || op == BinOp::Or; }

const char* to_string(BinOp op);
const char* to_string(UnOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// Expression node. A tagged struct keeps cloning and recursive walks simple;
// `kind` decides which fields are meaningful.
struct Expr {
    enum class Kind { IntLit, BoolLit, Var, Index, Unary, Binary, Call };

    Kind kind = Kind::IntLit;
    Span span;

    long long int_value = 0;  // IntLit
    bool bool_value = false;  // BoolLit
    std::string name;         // Var, Index (array), Call (callee)
    BinOp bin_op = BinOp::Add;
    UnOp un_op = UnOp::Neg;
    Span op_span;  // Binary: the operator token, for splice-based mutation

    // Index: [subscript]; Unary: [operand]; Binary: [lhs, rhs]; Call: args.
    std::vector<ExprPtr> args;

    static ExprPtr int_lit(long long v, Span s = {});
    static ExprPtr bool_lit(bool v, Span s = {});
    static ExprPtr var(std::string name, Span s = {});
    static ExprPtr index(std::string array, ExprPtr subscript, Span s = {});
    static ExprPtr unary(UnOp op, ExprPtr operand, Span s = {});
    static ExprPtr binary(BinOp op, ExprPtr lhs, ExprPtr rhs, Span s = {}, Span op_s = {});
    static ExprPtr call(std::string callee, std::vector<ExprPtr> call_args, Span s = {});
};

ExprPtr clone(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

// Statement node. `kind` decides which fields are meaningful:
//   InputDecl  name, array_size (-1 for scalar)
//   VarDecl    name, array_size (-1 for scalar), value (optional initializer)
//   Assign     name, value (value may be a Call expression: x = f(...);)
//   Store      name, index, value
//   If         cond, body, else_body
//   While      cond, body
//   Assert     value
//   Assume     value
//   CallStmt   name, call_args (procedure call, result discarded)
//   Return     value
struct Stmt {
    enum class Kind { InputDecl, VarDecl, Assign, Store, If, While, Assert, Assume, CallStmt, Return };

    Kind kind = Kind::Assign;
    Span span;

    std::string name;
    int array_size = -1;
    ExprPtr index;
    ExprPtr value;
    ExprPtr cond;
    std::vector<StmtPtr> body;
    std::vector<StmtPtr> else_body;
    std::vector<ExprPtr> call_args;
};

StmtPtr clone(const Stmt& s);
bool structurally_equal(const Stmt& a, const Stmt& b);

struct Function {
    std::string name;
    std::vector<std::string> params;  // int-typed by construction
    bool returns_value = false;
    std::vector<StmtPtr> body;
    Span span;
};

// Parsed compilation unit: the raw text plus top-level functions and the
// main statement sequence (execution starts at the first main statement).
struct TranslationUnit {
    std::string file;
    std::string source;
    std::vector<Function> functions;
    std::vector<StmtPtr> main_body;

    const Function* find_function(const std::string& name) const;
};

bool structurally_equal(const TranslationUnit& a, const TranslationUnit& b);

// --- Errors -----------------------------------------------------------------

struct SyntaxError : std::runtime_error {
    int line, column;
    SyntaxError(const std::string& msg, int line_, int column_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

struct UndeclaredVariableError : SyntaxError {
    using SyntaxError::SyntaxError;
};

struct RecursionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnrollBoundError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace faultsat::lang
