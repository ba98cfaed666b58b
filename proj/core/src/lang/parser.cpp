#include "faultsat/lang/parser.hpp"

#include <map>

#include "faultsat/lang/lexer.hpp"

namespace faultsat::lang {

namespace {

class Parser {
public:
    Parser(const std::string& source, const std::string& file)
        : tokens_(lex(source)), source_(source), file_(file) {}

    TranslationUnit run() {
        TranslationUnit tu;
        tu.file = file_;
        tu.source = source_;
        while (!at(Tok::Eof)) {
            if (at_function_header())
                tu.functions.push_back(parse_function());
            else
                tu.main_body.push_back(parse_statement());
        }
        check_semantics(tu);
        return tu;
    }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    std::string source_;
    std::string file_;

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(Tok k, size_t ahead = 0) const { return peek(ahead).kind == k; }

    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw SyntaxError(msg, t.span.line, t.span.column);
    }

    Token expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what, peek());
        return tokens_[pos_++];
    }

    Token take() { return tokens_[pos_++]; }

    // "int f(" or "void f(" introduces a function definition; "int x" a
    // declaration statement.
    bool at_function_header() const {
        if (at(Tok::KwVoid)) return true;
        return at(Tok::KwInt) && at(Tok::Ident, 1) && at(Tok::LParen, 2);
    }

    Span span_from(const Span& begin) const {
        Span s = begin;
        s.end = tokens_[pos_ > 0 ? pos_ - 1 : 0].span.end;
        return s;
    }

    // --- declarations ---------------------------------------------------

    Function parse_function() {
        Span begin = peek().span;
        bool returns_value = take().kind == Tok::KwInt;  // KwInt or KwVoid
        Function f;
        f.returns_value = returns_value;
        f.name = expect(Tok::Ident, "function name").text;
        expect(Tok::LParen, "'('");
        if (!at(Tok::RParen)) {
            while (true) {
                expect(Tok::KwInt, "'int' parameter type");
                f.params.push_back(expect(Tok::Ident, "parameter name").text);
                if (at(Tok::Comma)) {
                    take();
                    continue;
                }
                break;
            }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace)) {
            if (at(Tok::Eof)) fail("unterminated function body", peek());
            f.body.push_back(parse_statement());
        }
        take();  // '}'
        f.span = span_from(begin);
        return f;
    }

    // --- statements -----------------------------------------------------

    std::vector<StmtPtr> parse_stmt_or_block() {
        std::vector<StmtPtr> body;
        if (at(Tok::LBrace)) {
            take();
            while (!at(Tok::RBrace)) {
                if (at(Tok::Eof)) fail("unterminated block", peek());
                body.push_back(parse_statement());
            }
            take();
        } else {
            body.push_back(parse_statement());
        }
        return body;
    }

    StmtPtr parse_statement() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::KwInput: return parse_input_decl();
            case Tok::KwInt: return parse_var_decl();
            case Tok::KwIf: return parse_if();
            case Tok::KwWhile: return parse_while();
            case Tok::KwAssert: return parse_assert_like(Stmt::Kind::Assert, "assert");
            case Tok::KwAssume: return parse_assert_like(Stmt::Kind::Assume, "assume");
            case Tok::KwReturn: return parse_return();
            case Tok::Ident: return parse_ident_statement();
            default: fail("expected a statement", t);
        }
    }

    StmtPtr parse_input_decl() {
        Span begin = take().span;  // input
        expect(Tok::KwInt, "'int'");
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::InputDecl;
        s->name = expect(Tok::Ident, "variable name").text;
        if (at(Tok::LBracket)) {
            take();
            Token len = expect(Tok::IntLit, "array length");
            s->array_size = static_cast<int>(len.value);
            if (s->array_size <= 0) fail("array length must be positive", len);
            expect(Tok::RBracket, "']'");
        }
        expect(Tok::Semicolon, "';'");
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_var_decl() {
        Span begin = take().span;  // int
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::VarDecl;
        s->name = expect(Tok::Ident, "variable name").text;
        if (at(Tok::LBracket)) {
            take();
            Token len = expect(Tok::IntLit, "array length");
            s->array_size = static_cast<int>(len.value);
            if (s->array_size <= 0) fail("array length must be positive", len);
            expect(Tok::RBracket, "']'");
            expect(Tok::Semicolon, "';' (arrays take no initializer)");
            s->span = span_from(begin);
            return s;
        }
        if (at(Tok::Assign)) {
            take();
            s->value = parse_rhs();
        }
        expect(Tok::Semicolon, "';'");
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_if() {
        Span begin = take().span;  // if
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::If;
        expect(Tok::LParen, "'('");
        s->cond = parse_expr();
        expect(Tok::RParen, "')'");
        s->body = parse_stmt_or_block();
        if (at(Tok::KwElse)) {
            take();
            s->else_body = parse_stmt_or_block();
        }
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_while() {
        Span begin = take().span;  // while
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::While;
        expect(Tok::LParen, "'('");
        s->cond = parse_expr();
        expect(Tok::RParen, "')'");
        s->body = parse_stmt_or_block();
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_assert_like(Stmt::Kind kind, const char*) {
        Span begin = take().span;
        auto s = std::make_unique<Stmt>();
        s->kind = kind;
        expect(Tok::LParen, "'('");
        s->value = parse_expr();
        expect(Tok::RParen, "')'");
        expect(Tok::Semicolon, "';'");
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_return() {
        Span begin = take().span;
        auto s = std::make_unique<Stmt>();
        s->kind = Stmt::Kind::Return;
        s->value = parse_expr();
        expect(Tok::Semicolon, "';'");
        s->span = span_from(begin);
        return s;
    }

    StmtPtr parse_ident_statement() {
        Token name = take();
        auto s = std::make_unique<Stmt>();
        if (at(Tok::LParen)) {  // procedure call
            s->kind = Stmt::Kind::CallStmt;
            s->name = name.text;
            take();
            if (!at(Tok::RParen)) {
                while (true) {
                    s->call_args.push_back(parse_expr());
                    if (at(Tok::Comma)) {
                        take();
                        continue;
                    }
                    break;
                }
            }
            expect(Tok::RParen, "')'");
            expect(Tok::Semicolon, "';'");
            s->span = span_from(name.span);
            return s;
        }
        if (at(Tok::LBracket)) {  // array store
            s->kind = Stmt::Kind::Store;
            s->name = name.text;
            take();
            s->index = parse_expr();
            expect(Tok::RBracket, "']'");
            expect(Tok::Assign, "'='");
            s->value = parse_expr();
            expect(Tok::Semicolon, "';'");
            s->span = span_from(name.span);
            return s;
        }
        s->kind = Stmt::Kind::Assign;
        s->name = name.text;
        expect(Tok::Assign, "'='");
        s->value = parse_rhs();
        expect(Tok::Semicolon, "';'");
        s->span = span_from(name.span);
        return s;
    }

    // Right-hand side of an assignment: either a plain expression or a
    // function call (calls may appear only in this position).
    ExprPtr parse_rhs() {
        if (at(Tok::Ident) && at(Tok::LParen, 1)) {
            Token callee = take();
            take();  // (
            std::vector<ExprPtr> args;
            if (!at(Tok::RParen)) {
                while (true) {
                    args.push_back(parse_expr());
                    if (at(Tok::Comma)) {
                        take();
                        continue;
                    }
                    break;
                }
            }
            Token close = expect(Tok::RParen, "')'");
            Span s = callee.span;
            s.end = close.span.end;
            return Expr::call(callee.text, std::move(args), s);
        }
        return parse_expr();
    }

    // --- expressions ------------------------------------------------------
    // precedence: || < && < comparisons (non-associative) < + - < * / % < unary

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (at(Tok::OrOr)) {
            Token op = take();
            ExprPtr rhs = parse_and();
            Span s = lhs->span;
            s.end = rhs->span.end;
            lhs = Expr::binary(BinOp::Or, std::move(lhs), std::move(rhs), s, op.span);
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_cmp();
        while (at(Tok::AndAnd)) {
            Token op = take();
            ExprPtr rhs = parse_cmp();
            Span s = lhs->span;
            s.end = rhs->span.end;
            lhs = Expr::binary(BinOp::And, std::move(lhs), std::move(rhs), s, op.span);
        }
        return lhs;
    }

    ExprPtr parse_cmp() {
        ExprPtr lhs = parse_add();
        BinOp op;
        switch (peek().kind) {
            case Tok::Lt: op = BinOp::Lt; break;
            case Tok::Le: op = BinOp::Le; break;
            case Tok::Gt: op = BinOp::Gt; break;
            case Tok::Ge: op = BinOp::Ge; break;
            case Tok::EqEq: op = BinOp::Eq; break;
            case Tok::Ne: op = BinOp::Ne; break;
            default: return lhs;
        }
        Token opt = take();
        ExprPtr rhs = parse_add();
        Span s = lhs->span;
        s.end = rhs->span.end;
        return Expr::binary(op, std::move(lhs), std::move(rhs), s, opt.span);
    }

    ExprPtr parse_add() {
        ExprPtr lhs = parse_mul();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            Token op = take();
            ExprPtr rhs = parse_mul();
            Span s = lhs->span;
            s.end = rhs->span.end;
            lhs = Expr::binary(op.kind == Tok::Plus ? BinOp::Add : BinOp::Sub, std::move(lhs),
                               std::move(rhs), s, op.span);
        }
        return lhs;
    }

    ExprPtr parse_mul() {
        ExprPtr lhs = parse_unary();
        while (at(Tok::Star) || at(Tok::Slash) || at(Tok::Percent)) {
            Token op = take();
            ExprPtr rhs = parse_unary();
            BinOp b = op.kind == Tok::Star ? BinOp::Mul
                      : op.kind == Tok::Slash ? BinOp::Div
                                              : BinOp::Mod;
            Span s = lhs->span;
            s.end = rhs->span.end;
            lhs = Expr::binary(b, std::move(lhs), std::move(rhs), s, op.span);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (at(Tok::Minus)) {
            Token op = take();
            ExprPtr operand = parse_unary();
            Span s = op.span;
            s.end = operand->span.end;
            return Expr::unary(UnOp::Neg, std::move(operand), s);
        }
        if (at(Tok::Not)) {
            Token op = take();
            ExprPtr operand = parse_unary();
            Span s = op.span;
            s.end = operand->span.end;
            return Expr::unary(UnOp::Not, std::move(operand), s);
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::IntLit: {
                Token lit = take();
                return Expr::int_lit(lit.value, lit.span);
            }
            case Tok::KwTrue: {
                Token lit = take();
                return Expr::bool_lit(true, lit.span);
            }
            case Tok::KwFalse: {
                Token lit = take();
                return Expr::bool_lit(false, lit.span);
            }
            case Tok::Ident: {
                Token name = take();
                if (at(Tok::LBracket)) {
                    take();
                    ExprPtr idx = parse_expr();
                    Token close = expect(Tok::RBracket, "']'");
                    Span s = name.span;
                    s.end = close.span.end;
                    return Expr::index(name.text, std::move(idx), s);
                }
                if (at(Tok::LParen))
                    fail("function calls may appear only as a whole assignment right-hand side "
                         "or as a call statement",
                         name);
                return Expr::var(name.text, name.span);
            }
            case Tok::LParen: {
                take();
                ExprPtr inner = parse_expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default: fail("expected an expression", t);
        }
    }

    // --- semantic checks --------------------------------------------------

    enum class Ty { Int, Bool };

    struct Scope {
        std::map<std::string, int> vars;  // name -> array length, -1 scalar
        const TranslationUnit* tu = nullptr;

        bool declared(const std::string& n) const { return vars.count(n) > 0; }
    };

    [[noreturn]] void undeclared(const std::string& name, const Span& where) const {
        throw UndeclaredVariableError("use of undeclared variable '" + name + "'", where.line,
                                      where.column);
    }

    Ty check_expr(const Expr& e, Scope& sc, bool call_allowed = false) const {
        switch (e.kind) {
            case Expr::Kind::IntLit: return Ty::Int;
            case Expr::Kind::BoolLit: return Ty::Bool;
            case Expr::Kind::Var: {
                auto it = sc.vars.find(e.name);
                if (it == sc.vars.end()) undeclared(e.name, e.span);
                if (it->second >= 0)
                    throw SyntaxError("array '" + e.name + "' used without subscript", e.span.line,
                                      e.span.column);
                return Ty::Int;
            }
            case Expr::Kind::Index: {
                auto it = sc.vars.find(e.name);
                if (it == sc.vars.end()) undeclared(e.name, e.span);
                if (it->second < 0)
                    throw SyntaxError("subscript applied to scalar '" + e.name + "'", e.span.line,
                                      e.span.column);
                require(check_expr(*e.args[0], sc) == Ty::Int, "array subscript must be int",
                        e.args[0]->span);
                return Ty::Int;
            }
            case Expr::Kind::Unary: {
                Ty t = check_expr(*e.args[0], sc);
                if (e.un_op == UnOp::Neg) {
                    require(t == Ty::Int, "unary '-' needs an int operand", e.span);
                    return Ty::Int;
                }
                require(t == Ty::Bool, "'!' needs a bool operand", e.span);
                return Ty::Bool;
            }
            case Expr::Kind::Binary: {
                Ty l = check_expr(*e.args[0], sc);
                Ty r = check_expr(*e.args[1], sc);
                if (is_logical_op(e.bin_op)) {
                    require(l == Ty::Bool && r == Ty::Bool,
                            std::string("'") + to_string(e.bin_op) + "' needs bool operands",
                            e.span);
                    return Ty::Bool;
                }
                require(l == Ty::Int && r == Ty::Int,
                        std::string("'") + to_string(e.bin_op) + "' needs int operands", e.span);
                return is_bool_op(e.bin_op) ? Ty::Bool : Ty::Int;
            }
            case Expr::Kind::Call: {
                if (!call_allowed)
                    throw SyntaxError("function call not allowed here", e.span.line, e.span.column);
                const Function* f = sc.tu->find_function(e.name);
                if (!f)
                    throw SyntaxError("call to undefined function '" + e.name + "'", e.span.line,
                                      e.span.column);
                if (f->params.size() != e.args.size())
                    throw SyntaxError("wrong number of arguments to '" + e.name + "'", e.span.line,
                                      e.span.column);
                for (const auto& a : e.args)
                    require(check_expr(*a, sc) == Ty::Int, "arguments must be int", a->span);
                return Ty::Int;
            }
        }
        throw SyntaxError("unreachable", 0, 0);
    }

    void require(bool ok, const std::string& msg, const Span& where) const {
        if (!ok) throw SyntaxError(msg, where.line, where.column);
    }

    void declare(Scope& sc, const std::string& name, int array_size, const Span& where) const {
        if (sc.declared(name))
            throw SyntaxError("redeclaration of '" + name + "'", where.line, where.column);
        sc.vars[name] = array_size;
    }

    void check_stmt_list(const std::vector<StmtPtr>& stmts, Scope& sc, bool in_function,
                         bool top_level) const {
        for (const auto& sp : stmts) {
            const Stmt& s = *sp;
            switch (s.kind) {
                case Stmt::Kind::InputDecl:
                    require(!in_function && top_level,
                            "input declarations are allowed only at the top level", s.span);
                    declare(sc, s.name, s.array_size, s.span);
                    break;
                case Stmt::Kind::VarDecl:
                    declare(sc, s.name, s.array_size, s.span);
                    if (s.value) {
                        require(check_expr(*s.value, sc, /*call_allowed=*/true) == Ty::Int,
                                "initializer must be int", s.value->span);
                        if (s.value->kind == Expr::Kind::Call) {
                            const Function* f = sc.tu->find_function(s.value->name);
                            require(f && f->returns_value,
                                    "void function used as an initializer", s.value->span);
                        }
                    }
                    break;
                case Stmt::Kind::Assign: {
                    auto it = sc.vars.find(s.name);
                    if (it == sc.vars.end()) undeclared(s.name, s.span);
                    require(it->second < 0, "cannot assign to an array without subscript", s.span);
                    require(check_expr(*s.value, sc, /*call_allowed=*/true) == Ty::Int,
                            "assigned value must be int", s.value->span);
                    if (s.value->kind == Expr::Kind::Call) {
                        const Function* f = sc.tu->find_function(s.value->name);
                        require(f && f->returns_value,
                                "void function used as an assignment right-hand side",
                                s.value->span);
                    }
                    break;
                }
                case Stmt::Kind::Store: {
                    auto it = sc.vars.find(s.name);
                    if (it == sc.vars.end()) undeclared(s.name, s.span);
                    require(it->second >= 0, "subscripted store needs an array", s.span);
                    require(check_expr(*s.index, sc) == Ty::Int, "array subscript must be int",
                            s.index->span);
                    require(check_expr(*s.value, sc) == Ty::Int, "stored value must be int",
                            s.value->span);
                    break;
                }
                case Stmt::Kind::If:
                    require(check_expr(*s.cond, sc) == Ty::Bool, "if condition must be bool",
                            s.cond->span);
                    check_stmt_list(s.body, sc, in_function, false);
                    check_stmt_list(s.else_body, sc, in_function, false);
                    break;
                case Stmt::Kind::While:
                    require(check_expr(*s.cond, sc) == Ty::Bool, "while condition must be bool",
                            s.cond->span);
                    check_stmt_list(s.body, sc, in_function, false);
                    break;
                case Stmt::Kind::Assert:
                case Stmt::Kind::Assume:
                    require(check_expr(*s.value, sc) == Ty::Bool,
                            s.kind == Stmt::Kind::Assert ? "assert needs a bool condition"
                                                         : "assume needs a bool condition",
                            s.value->span);
                    break;
                case Stmt::Kind::CallStmt: {
                    const Function* f = sc.tu->find_function(s.name);
                    if (!f)
                        throw SyntaxError("call to undefined function '" + s.name + "'",
                                          s.span.line, s.span.column);
                    if (f->params.size() != s.call_args.size())
                        throw SyntaxError("wrong number of arguments to '" + s.name + "'",
                                          s.span.line, s.span.column);
                    for (const auto& a : s.call_args)
                        require(check_expr(*a, sc) == Ty::Int, "arguments must be int", a->span);
                    break;
                }
                case Stmt::Kind::Return:
                    // Position and admissibility are enforced by the caller;
                    // only the operand type is checked here.
                    require(check_expr(*s.value, sc) == Ty::Int, "return value must be int",
                            s.value->span);
                    break;
            }
        }
    }

    // Returns are permitted only as the final statement of a value-returning
    // function body; void functions and the main body may not return.
    void check_return_positions(const std::vector<StmtPtr>& stmts, bool allow_final,
                                const std::string& where) const {
        for (size_t i = 0; i < stmts.size(); ++i) {
            const Stmt& s = *stmts[i];
            bool is_final = allow_final && i + 1 == stmts.size();
            if (s.kind == Stmt::Kind::Return && !is_final)
                throw SyntaxError("'return' must be the final statement of " + where, s.span.line,
                                  s.span.column);
            if (s.kind == Stmt::Kind::If || s.kind == Stmt::Kind::While) {
                check_return_positions(s.body, false, where);
                check_return_positions(s.else_body, false, where);
            }
        }
    }

    void detect_call_cycles(const TranslationUnit& tu) const {
        // colors: 0 unvisited, 1 on stack, 2 done
        std::map<std::string, int> color;
        for (const auto& f : tu.functions) {
            if (color.count(f.name))
                throw SyntaxError("redefinition of function '" + f.name + "'", f.span.line,
                                  f.span.column);
            color[f.name] = 0;
        }

        std::vector<std::string> callees;
        auto collect = [&](const auto& self, const Stmt& s) -> void {
            if (s.kind == Stmt::Kind::CallStmt) callees.push_back(s.name);
            if (s.value && s.value->kind == Expr::Kind::Call) callees.push_back(s.value->name);
            for (const auto& b : s.body) self(self, *b);
            for (const auto& b : s.else_body) self(self, *b);
        };

        auto visit = [&](const auto& self, const std::string& name) -> void {
            auto it = color.find(name);
            if (it == color.end()) return;  // undefined callee reported elsewhere
            if (it->second == 1) throw RecursionError("recursive call involving '" + name + "'");
            if (it->second == 2) return;
            it->second = 1;
            const Function* f = tu.find_function(name);
            callees.clear();
            std::vector<std::string> local;
            for (const auto& st : f->body) collect(collect, *st);
            local.swap(callees);
            for (const auto& callee : local) self(self, callee);
            color[name] = 2;
        };
        for (const auto& f : tu.functions) visit(visit, f.name);
    }

    void check_semantics(const TranslationUnit& tu) const {
        detect_call_cycles(tu);

        // Globals: top-level declarations of the main body, visible
        // everywhere (values are zero until the declaration executes).
        Scope globals;
        globals.tu = &tu;
        for (const auto& sp : tu.main_body)
            if (sp->kind == Stmt::Kind::InputDecl || sp->kind == Stmt::Kind::VarDecl) {
                if (globals.declared(sp->name))
                    throw SyntaxError("redeclaration of '" + sp->name + "'", sp->span.line,
                                      sp->span.column);
                globals.vars[sp->name] = sp->array_size;
            }

        for (const auto& f : tu.functions) {
            Scope sc = globals;
            for (size_t i = 0; i < f.params.size(); ++i) {
                if (sc.declared(f.params[i]))
                    throw SyntaxError("parameter '" + f.params[i] + "' shadows another name",
                                      f.span.line, f.span.column);
                sc.vars[f.params[i]] = -1;
            }
            check_return_positions(f.body, f.returns_value, "function '" + f.name + "'");
            if (f.returns_value &&
                (f.body.empty() || f.body.back()->kind != Stmt::Kind::Return))
                throw SyntaxError("function '" + f.name + "' must end with a return statement",
                                  f.span.line, f.span.column);
            check_stmt_list(f.body, sc, /*in_function=*/true, /*top_level=*/true);
        }

        // The main body is checked in declaration order: a use before its
        // declaration statement is an error. Re-check declarations against a
        // fresh scope so ordering violations surface.
        Scope sc;
        sc.tu = &tu;
        check_return_positions(tu.main_body, false, "the program");
        check_stmt_list_ordered(tu.main_body, sc, /*top_level=*/true);
    }

    // Main-body pass with source-order declaration tracking (nested bodies
    // share the single flat scope).
    void check_stmt_list_ordered(const std::vector<StmtPtr>& stmts, Scope& sc,
                                 bool top_level) const {
        for (const auto& sp : stmts) {
            const Stmt& s = *sp;
            switch (s.kind) {
                case Stmt::Kind::If:
                    require(check_expr(*s.cond, sc) == Ty::Bool, "if condition must be bool",
                            s.cond->span);
                    check_stmt_list_ordered(s.body, sc, false);
                    check_stmt_list_ordered(s.else_body, sc, false);
                    break;
                case Stmt::Kind::While:
                    require(check_expr(*s.cond, sc) == Ty::Bool, "while condition must be bool",
                            s.cond->span);
                    check_stmt_list_ordered(s.body, sc, false);
                    break;
                default: {
                    // Reuse the unordered per-statement logic on a single
                    // statement; declarations mutate the shared scope.
                    std::vector<StmtPtr> one;
                    one.push_back(clone(s));
                    check_stmt_list(one, sc, /*in_function=*/false, top_level);
                    break;
                }
            }
        }
    }
};

}  // namespace

TranslationUnit parse(const std::string& source, const std::string& file) {
    return Parser(source, file).run();
}

}  // namespace faultsat::lang
