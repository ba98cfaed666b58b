#include <map>

#include "faultsat/lang/printer.hpp"
#include "faultsat/lang/program.hpp"

namespace faultsat::lang {

namespace {

using RenameMap = std::map<std::string, std::string>;

ExprPtr clone_renamed(const Expr& e, const RenameMap& rename) {
    ExprPtr c = clone(e);
    // Walk the fresh tree and substitute names.
    auto walk = [&rename](const auto& self, Expr& node) -> void {
        if (node.kind == Expr::Kind::Var || node.kind == Expr::Kind::Index) {
            auto it = rename.find(node.name);
            if (it != rename.end()) node.name = it->second;
        }
        for (auto& a : node.args) self(self, *a);
    };
    walk(walk, *c);
    return c;
}

// --- call inlining (AST -> AST) ---------------------------------------------

// Replaces every call with argument-binding assignments, the renamed callee
// body, and a result copy-out. Runs before unrolling so that loop copies
// share statement identities. `origin` records which function each produced
// statement came from (empty for the main body), feeding trusted-code
// marking after lowering.
class Inliner {
public:
    explicit Inliner(const TranslationUnit& tu) : tu_(tu) {}

    std::vector<StmtPtr> run() { return inline_list(tu_.main_body, {}); }

    const std::map<const Stmt*, std::string>& origin() const { return origin_; }

private:
    const TranslationUnit& tu_;
    int call_counter_ = 0;
    std::string current_fn_;
    std::map<const Stmt*, std::string> origin_;

    std::vector<StmtPtr> inline_list(const std::vector<StmtPtr>& stmts, const RenameMap& rename) {
        std::vector<StmtPtr> out;
        for (const auto& s : stmts) inline_stmt(*s, rename, out);
        return out;
    }

    StmtPtr renamed_clone(const Stmt& s, const RenameMap& rename) {
        StmtPtr c = std::make_unique<Stmt>();
        c->kind = s.kind;
        c->span = s.span;
        c->name = s.name;
        c->array_size = s.array_size;
        auto it = rename.find(s.name);
        if (it != rename.end()) c->name = it->second;
        if (s.index) c->index = clone_renamed(*s.index, rename);
        if (s.value) c->value = clone_renamed(*s.value, rename);
        if (s.cond) c->cond = clone_renamed(*s.cond, rename);
        for (const auto& a : s.call_args) c->call_args.push_back(clone_renamed(*a, rename));
        return c;  // bodies handled by the caller
    }

    // Emits the inlined expansion of calling `f` with `args` (already
    // renamed into the caller's frame). Returns the name holding the result
    // for value-returning functions.
    std::string expand_call(const Function& f, const std::vector<ExprPtr>& args, Span call_span,
                            std::vector<StmtPtr>& out) {
        int site = ++call_counter_;
        auto local_name = [site](const std::string& n) { return n + "@" + std::to_string(site); };

        RenameMap rename;
        for (const auto& p : f.params) rename[p] = local_name(p);

        // Locals (including array locals) declared anywhere in the body.
        auto collect_decls = [&](const auto& self, const std::vector<StmtPtr>& body) -> void {
            for (const auto& s : body) {
                if (s->kind == Stmt::Kind::VarDecl) rename[s->name] = local_name(s->name);
                self(self, s->body);
                self(self, s->else_body);
            }
        };
        collect_decls(collect_decls, f.body);

        std::string result = local_name("return." + f.name);

        // Argument binding, attributed to the call site's line (and to the
        // function containing the call site).
        for (size_t i = 0; i < args.size(); ++i) {
            auto bind = std::make_unique<Stmt>();
            bind->kind = Stmt::Kind::Assign;
            bind->name = rename[f.params[i]];
            bind->value = clone(*args[i]);
            bind->span = call_span;
            origin_[bind.get()] = current_fn_;
            out.push_back(std::move(bind));
        }

        std::string saved_fn = current_fn_;
        current_fn_ = f.name;
        for (const auto& s : f.body) {
            if (s->kind == Stmt::Kind::Return) {
                auto ret = std::make_unique<Stmt>();
                ret->kind = Stmt::Kind::Assign;
                ret->name = result;
                ret->value = clone_renamed(*s->value, rename);
                ret->span = s->span;
                origin_[ret.get()] = current_fn_;
                out.push_back(std::move(ret));
                continue;
            }
            inline_stmt(*s, rename, out);
        }
        current_fn_ = saved_fn;
        return result;
    }

    void inline_stmt(const Stmt& s, const RenameMap& rename, std::vector<StmtPtr>& out) {
        switch (s.kind) {
            case Stmt::Kind::CallStmt: {
                const Function* f = tu_.find_function(s.name);
                std::vector<ExprPtr> args;
                for (const auto& a : s.call_args) args.push_back(clone_renamed(*a, rename));
                expand_call(*f, args, s.span, out);
                return;
            }
            case Stmt::Kind::Assign:
            case Stmt::Kind::VarDecl:
                if (s.value && s.value->kind == Expr::Kind::Call) {
                    const Function* f = tu_.find_function(s.value->name);
                    std::vector<ExprPtr> args;
                    for (const auto& a : s.value->args) args.push_back(clone_renamed(*a, rename));
                    std::string result = expand_call(*f, args, s.span, out);
                    StmtPtr copy_out = renamed_clone(s, rename);
                    copy_out->value = Expr::var(result, s.value->span);
                    origin_[copy_out.get()] = current_fn_;
                    out.push_back(std::move(copy_out));
                    return;
                }
                break;
            default: break;
        }
        StmtPtr c = renamed_clone(s, rename);
        c->body = inline_list(s.body, rename);
        c->else_body = inline_list(s.else_body, rename);
        origin_[c.get()] = current_fn_;
        out.push_back(std::move(c));
    }
};

// --- lowering to the flat transition graph ----------------------------------

class Lowerer {
public:
    Lowerer(const TranslationUnit& tu, int eta, int width) : tu_(tu), eta_(eta) {
        prog_.file = tu.file;
        prog_.source = tu.source;
        prog_.width = width;
        prog_.unroll_bound = eta;
    }

    Program run() {
        Inliner inliner(tu_);
        std::vector<StmtPtr> flat = inliner.run();
        origin_ = &inliner.origin();
        prog_.num_locations = 1;  // entry
        int exit_loc = lower_seq(flat, 0, std::nullopt);
        (void)exit_loc;

        prog_.out_edges.assign(prog_.num_locations, {});
        for (const auto& t : prog_.transitions) prog_.out_edges[t.source].push_back(t.id);
        prog_.checks_at.assign(prog_.num_locations, {});
        for (const auto& a : prog_.assertions) prog_.checks_at[a.location].push_back(a.id);
        return std::move(prog_);
    }

private:
    const TranslationUnit& tu_;
    int eta_;
    Program prog_;
    std::map<const Stmt*, int> stmt_ids_;
    std::map<const Stmt*, int> loop_ids_;
    const std::map<const Stmt*, std::string>* origin_ = nullptr;
    int next_loop_id_ = 0;

    int alloc_loc() { return prog_.num_locations++; }

    int statement_id(const Stmt& s, std::optional<int> loop_id) {
        auto it = stmt_ids_.find(&s);
        if (it != stmt_ids_.end()) return it->second;
        StatementInfo info;
        info.id = static_cast<int>(prog_.statements.size());
        info.line = s.span.line;
        info.text = one_line(s);
        info.loop_id = loop_id;
        if (origin_) {
            auto oit = origin_->find(&s);
            if (oit != origin_->end()) info.function = oit->second;
        }
        prog_.statements.push_back(std::move(info));
        stmt_ids_[&s] = prog_.statements.back().id;
        return prog_.statements.back().id;
    }

    const Expr* own(ExprPtr e) {
        prog_.arena.push_back(std::move(e));
        return prog_.arena.back().get();
    }

    int emit(Transition t) {
        t.id = static_cast<int>(prog_.transitions.size());
        t.artifact = t.statement_id < 0;
        prog_.transitions.push_back(std::move(t));
        return prog_.transitions.back().id;
    }

    void declare_scalar(const std::string& name, bool is_input) {
        if (!prog_.find_scalar(name)) prog_.scalars.push_back({name, is_input});
    }

    // Emits the two bounds checks per array access and one division guard
    // per / or % inside `e`, anchored at `loc` and owned by transition
    // `owner` (whose id is assigned after emission; callers pass the id).
    void emit_implicit_checks(const Expr& e, int loc, int owner, int line) {
        if (e.kind == Expr::Kind::Index) {
            const ArrayDecl* arr = prog_.find_array(e.name);
            int len = arr ? arr->length : 0;
            const Expr* idx_ge = own(Expr::binary(BinOp::Ge, clone(*e.args[0]), Expr::int_lit(0)));
            const Expr* idx_lt =
                own(Expr::binary(BinOp::Lt, clone(*e.args[0]), Expr::int_lit(len)));
            push_check(idx_ge, AssertKind::ArrayBounds, loc, owner, line);
            push_check(idx_lt, AssertKind::ArrayBounds, loc, owner, line);
        }
        if (e.kind == Expr::Kind::Binary && (e.bin_op == BinOp::Div || e.bin_op == BinOp::Mod)) {
            const Expr* nz = own(Expr::binary(BinOp::Ne, clone(*e.args[1]), Expr::int_lit(0)));
            push_check(nz, AssertKind::DivisionGuard, loc, owner, line);
        }
        for (const auto& a : e.args) emit_implicit_checks(*a, loc, owner, line);
    }

    void push_check(const Expr* pred, AssertKind kind, int loc, int owner, int line) {
        AssertionSpec spec;
        spec.id = static_cast<int>(prog_.assertions.size());
        spec.location = loc;
        spec.predicate = pred;
        spec.kind = kind;
        spec.owner_transition = owner;
        spec.line = line;
        spec.text = to_source(*pred);
        prog_.assertions.push_back(std::move(spec));
    }

    int lower_seq(const std::vector<StmtPtr>& stmts, int entry, std::optional<LoopContext> loop) {
        for (const auto& s : stmts) entry = lower_stmt(*s, entry, loop);
        return entry;
    }

    int lower_stmt(const Stmt& s, int entry, std::optional<LoopContext> loop) {
        std::optional<int> loop_id =
            loop ? std::optional<int>(loop->loop_id) : std::nullopt;
        switch (s.kind) {
            case Stmt::Kind::InputDecl: {
                if (s.array_size >= 0) {
                    if (!prog_.find_array(s.name))
                        prog_.arrays.push_back({s.name, s.array_size, true});
                } else {
                    declare_scalar(s.name, true);
                }
                int next = alloc_loc();
                Transition t;
                t.source = entry;
                t.target = next;
                t.kind = TransKind::Skip;
                t.statement_id = statement_id(s, loop_id);
                t.loop = loop;
                t.line = s.span.line;
                emit(std::move(t));
                return next;
            }
            case Stmt::Kind::VarDecl: {
                if (s.array_size >= 0) {
                    if (!prog_.find_array(s.name))
                        prog_.arrays.push_back({s.name, s.array_size, false});
                } else {
                    declare_scalar(s.name, false);
                }
                int next = alloc_loc();
                Transition t;
                t.source = entry;
                t.target = next;
                t.statement_id = statement_id(s, loop_id);
                t.loop = loop;
                t.line = s.span.line;
                if (s.value && s.array_size < 0) {
                    t.kind = TransKind::Assign;
                    t.var = s.name;
                    t.rhs = own(clone(*s.value));
                    int id = emit(std::move(t));
                    emit_implicit_checks(*prog_.transitions[id].rhs, entry, id, s.span.line);
                    return next;
                }
                t.kind = TransKind::Skip;
                emit(std::move(t));
                return next;
            }
            case Stmt::Kind::Assign: {
                declare_scalar(s.name, false);  // inliner-introduced temporaries
                int next = alloc_loc();
                Transition t;
                t.source = entry;
                t.target = next;
                t.kind = TransKind::Assign;
                t.var = s.name;
                t.rhs = own(clone(*s.value));
                t.statement_id = statement_id(s, loop_id);
                t.loop = loop;
                t.line = s.span.line;
                int id = emit(std::move(t));
                emit_implicit_checks(*prog_.transitions[id].rhs, entry, id, s.span.line);
                return next;
            }
            case Stmt::Kind::Store: {
                int next = alloc_loc();
                Transition t;
                t.source = entry;
                t.target = next;
                t.kind = TransKind::Store;
                t.var = s.name;
                t.index = own(clone(*s.index));
                t.rhs = own(clone(*s.value));
                t.statement_id = statement_id(s, loop_id);
                t.loop = loop;
                t.line = s.span.line;
                int id = emit(std::move(t));
                const Transition& tr = prog_.transitions[id];
                // Bounds for the stored-to cell, then checks inside both
                // subexpressions.
                const ArrayDecl* arr = prog_.find_array(s.name);
                int len = arr ? arr->length : 0;
                const Expr* ge = own(Expr::binary(BinOp::Ge, clone(*s.index), Expr::int_lit(0)));
                const Expr* lt = own(Expr::binary(BinOp::Lt, clone(*s.index), Expr::int_lit(len)));
                push_check(ge, AssertKind::ArrayBounds, entry, id, s.span.line);
                push_check(lt, AssertKind::ArrayBounds, entry, id, s.span.line);
                emit_implicit_checks(*tr.index, entry, id, s.span.line);
                emit_implicit_checks(*tr.rhs, entry, id, s.span.line);
                return next;
            }
            case Stmt::Kind::Assert: {
                int sid = statement_id(s, loop_id);
                const Expr* pred = own(clone(*s.value));
                AssertionSpec spec;
                spec.id = static_cast<int>(prog_.assertions.size());
                spec.location = entry;
                spec.predicate = pred;
                spec.kind = AssertKind::Explicit;
                spec.owner_transition = -1;
                spec.line = s.span.line;
                spec.text = to_source(*pred);
                prog_.assertions.push_back(std::move(spec));

                int next = alloc_loc();
                Transition t;
                t.source = entry;
                t.target = next;
                t.kind = TransKind::Skip;
                t.statement_id = sid;
                t.loop = loop;
                t.line = s.span.line;
                int id = emit(std::move(t));
                // The predicate itself may contain array reads / divisions.
                emit_implicit_checks(*pred, entry, id, s.span.line);
                return next;
            }
            case Stmt::Kind::Assume: {
                int next = alloc_loc();
                Transition t;
                t.source = entry;
                t.target = next;
                t.kind = TransKind::Assume;
                t.cond = own(clone(*s.value));
                t.statement_id = statement_id(s, loop_id);
                t.loop = loop;
                t.line = s.span.line;
                int id = emit(std::move(t));
                emit_implicit_checks(*prog_.transitions[id].cond, entry, id, s.span.line);
                return next;
            }
            case Stmt::Kind::If: {
                int sid = statement_id(s, loop_id);
                const Expr* cond = own(clone(*s.cond));

                int then_entry = alloc_loc();
                Transition te;
                te.source = entry;
                te.target = then_entry;
                te.kind = TransKind::Guard;
                te.cond = cond;
                te.statement_id = sid;
                te.loop = loop;
                te.line = s.span.line;
                int then_id = emit(std::move(te));
                emit_implicit_checks(*cond, entry, then_id, s.span.line);

                int then_exit = lower_seq(s.body, then_entry, loop);

                int else_entry = alloc_loc();
                Transition ee;
                ee.source = entry;
                ee.target = else_entry;
                ee.kind = TransKind::Guard;
                ee.cond = cond;
                ee.cond_negated = true;
                ee.statement_id = sid;
                ee.loop = loop;
                ee.line = s.span.line;
                emit(std::move(ee));

                int else_exit = lower_seq(s.else_body, else_entry, loop);

                int join = alloc_loc();
                Transition j1;
                j1.source = then_exit;
                j1.target = join;
                j1.kind = TransKind::Skip;
                j1.line = s.span.line;
                emit(std::move(j1));
                Transition j2;
                j2.source = else_exit;
                j2.target = join;
                j2.kind = TransKind::Skip;
                j2.line = s.span.line;
                emit(std::move(j2));
                return join;
            }
            case Stmt::Kind::While: {
                int sid = statement_id(s, std::nullopt);
                int lid;
                auto lit = loop_ids_.find(&s);
                if (lit != loop_ids_.end()) {
                    lid = lit->second;
                } else {
                    lid = next_loop_id_++;
                    loop_ids_[&s] = lid;
                }
                // The while statement belongs to its own loop for grouping.
                if (!prog_.statements[sid].loop_id) prog_.statements[sid].loop_id = lid;

                const Expr* cond = own(clone(*s.cond));
                std::vector<int> exit_edges;
                int head = entry;
                for (int k = 1; k <= eta_; ++k) {
                    LoopContext ctx{lid, k};
                    int body_entry = alloc_loc();
                    Transition enter;
                    enter.source = head;
                    enter.target = body_entry;
                    enter.kind = TransKind::Guard;
                    enter.cond = cond;
                    enter.statement_id = sid;
                    enter.loop = ctx;
                    enter.line = s.span.line;
                    int enter_id = emit(std::move(enter));
                    emit_implicit_checks(*cond, head, enter_id, s.span.line);

                    Transition leave;
                    leave.source = head;
                    leave.target = -1;  // patched to the loop exit below
                    leave.kind = TransKind::Guard;
                    leave.cond = cond;
                    leave.cond_negated = true;
                    leave.statement_id = sid;
                    leave.loop = ctx;
                    leave.line = s.span.line;
                    exit_edges.push_back(emit(std::move(leave)));

                    head = lower_seq(s.body, body_entry, ctx);
                }

                // Unwinding assumption: beyond eta copies the guard must be
                // false; otherwise the run exceeds the bound.
                int exit = alloc_loc();
                Transition unwind;
                unwind.source = head;
                unwind.target = exit;
                unwind.kind = TransKind::Assume;
                unwind.cond = own(Expr::unary(UnOp::Not, clone(*s.cond)));
                unwind.line = s.span.line;
                emit(std::move(unwind));
                for (int te : exit_edges) prog_.transitions[te].target = exit;
                return exit;
            }
            case Stmt::Kind::CallStmt:
            case Stmt::Kind::Return:
                // Eliminated by the inliner.
                return entry;
        }
        return entry;
    }
};

}  // namespace

const ArrayDecl* Program::find_array(const std::string& name) const {
    for (const auto& a : arrays)
        if (a.name == name) return &a;
    return nullptr;
}

const ScalarDecl* Program::find_scalar(const std::string& name) const {
    for (const auto& s : scalars)
        if (s.name == name) return &s;
    return nullptr;
}

std::vector<std::string> Program::input_names() const {
    std::vector<std::string> out;
    for (const auto& s : scalars)
        if (s.is_input) out.push_back(s.name);
    for (const auto& a : arrays)
        if (a.is_input)
            for (int i = 0; i < a.length; ++i)
                out.push_back(a.name + "[" + std::to_string(i) + "]");
    return out;
}

Program lower_to_cfg(const TranslationUnit& tu, int eta, int width) {
    if (eta < 1) throw UnrollBoundError("unroll bound must be at least 1");
    return Lowerer(tu, eta, width).run();
}

void mark_trusted(Program& program, const std::set<int>& lines,
                  const std::set<std::string>& functions) {
    for (auto& s : program.statements)
        if (lines.count(s.line) > 0 || (!s.function.empty() && functions.count(s.function) > 0))
            s.trusted = true;
}

}  // namespace faultsat::lang
