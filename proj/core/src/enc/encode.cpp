#include "faultsat/enc/encode.hpp"

#include <algorithm>
#include <utility>

#include "faultsat/exec/arith.hpp"

namespace faultsat::enc {

namespace {

using lang::Expr;
using lang::Program;
using lang::TransKind;
using lang::Transition;

std::string cell_name(const std::string& array, size_t i) {
    return array + "[" + std::to_string(i) + "]";
}

// SSA environment: the current bit vector of every scalar and array cell.
struct Env {
    std::map<std::string, BitVec> scalars;
    std::map<std::string, std::vector<BitVec>> arrays;
};

// A clause group accumulated while encoding: selector variable, owning
// statement, optional unrolling index, clause indices.
struct GroupDraft {
    int selector = 0;
    int statement_id = 0;
    std::optional<int> iter;
    std::vector<int> members;
};

using SelectorKey = std::pair<int, int>;  // (statement id, unrolling or 0)

bool relaxable(const Program& p, const Transition& t) {
    // Assumes are specification, not implementation: they stay hard so a
    // relaxation can never "repair" a run by defeating its own premises.
    return t.statement_id >= 0 &&
           !p.statements[static_cast<size_t>(t.statement_id)].trusted &&
           t.kind != TransKind::Skip && t.kind != TransKind::Assume;
}

SelectorKey selector_key(Granularity gran, const Transition& t) {
    int iter = (gran == Granularity::Iteration && t.loop) ? t.loop->iter : 0;
    return {t.statement_id, iter};
}

// Allocates one selector variable per clause group, in statement order, so
// selectors occupy the variable range right after the constant.
void plan_selectors(const Program& p, Granularity gran, int& var_count,
                    std::map<SelectorKey, int>& plan,
                    std::vector<GroupDraft>& drafts) {
    for (const Transition& t : p.transitions) {
        if (!relaxable(p, t)) continue;
        SelectorKey key = selector_key(gran, t);
        if (plan.count(key)) continue;
        GroupDraft d;
        d.selector = ++var_count;
        d.statement_id = key.first;
        if (key.second > 0) d.iter = key.second;
        plan.emplace(key, static_cast<int>(drafts.size()));
        drafts.push_back(std::move(d));
    }
}

// --- expression encoding -----------------------------------------------------

BitVec encode_int(BitBlaster& bb, const Expr& e, const Env& env, int w);

sat::Lit encode_bool(BitBlaster& bb, const Expr& e, const Env& env, int w) {
    switch (e.kind) {
        case Expr::Kind::BoolLit: return e.bool_value ? kTrue : kFalse;
        case Expr::Kind::Unary:
            if (e.un_op != lang::UnOp::Not)
                throw std::logic_error("'-' in bool context");
            return -encode_bool(bb, *e.args[0], env, w);
        case Expr::Kind::Binary: {
            switch (e.bin_op) {
                case lang::BinOp::And:
                    return bb.mk_and(encode_bool(bb, *e.args[0], env, w),
                                     encode_bool(bb, *e.args[1], env, w));
                case lang::BinOp::Or:
                    return bb.mk_or(encode_bool(bb, *e.args[0], env, w),
                                    encode_bool(bb, *e.args[1], env, w));
                default: break;
            }
            BitVec a = encode_int(bb, *e.args[0], env, w);
            BitVec b = encode_int(bb, *e.args[1], env, w);
            switch (e.bin_op) {
                case lang::BinOp::Lt: return bb.lt_s(a, b);
                case lang::BinOp::Le: return bb.le_s(a, b);
                case lang::BinOp::Gt: return bb.lt_s(b, a);
                case lang::BinOp::Ge: return bb.le_s(b, a);
                case lang::BinOp::Eq: return bb.eq_vec(a, b);
                case lang::BinOp::Ne: return -bb.eq_vec(a, b);
                default:
                    throw std::logic_error("int operator in bool context");
            }
        }
        case Expr::Kind::Call:
            throw UnsupportedOperator("call expression reached the encoder");
        default: throw std::logic_error("int expression in bool context");
    }
}

BitVec encode_int(BitBlaster& bb, const Expr& e, const Env& env, int w) {
    switch (e.kind) {
        case Expr::Kind::IntLit: return bb.const_vec(e.int_value, w);
        case Expr::Kind::Var: {
            auto it = env.scalars.find(e.name);
            if (it == env.scalars.end())
                throw std::logic_error("undeclared scalar '" + e.name + "'");
            return it->second;
        }
        case Expr::Kind::Index: {
            auto it = env.arrays.find(e.name);
            if (it == env.arrays.end())
                throw std::logic_error("undeclared array '" + e.name + "'");
            return bb.select(it->second, encode_int(bb, *e.args[0], env, w));
        }
        case Expr::Kind::Unary:
            if (e.un_op != lang::UnOp::Neg)
                throw std::logic_error("'!' in int context");
            return bb.neg(encode_int(bb, *e.args[0], env, w));
        case Expr::Kind::Binary: {
            BitVec a = encode_int(bb, *e.args[0], env, w);
            BitVec b = encode_int(bb, *e.args[1], env, w);
            switch (e.bin_op) {
                case lang::BinOp::Add: return bb.add(a, b);
                case lang::BinOp::Sub: return bb.sub(a, b);
                case lang::BinOp::Mul: return bb.mul(a, b);
                case lang::BinOp::Div: return bb.divmod(a, b).quot;
                case lang::BinOp::Mod: return bb.divmod(a, b).rem;
                default:
                    throw std::logic_error("bool operator in int context");
            }
        }
        case Expr::Kind::Call:
            throw UnsupportedOperator("call expression reached the encoder");
        default: throw std::logic_error("bool expression in int context");
    }
}

// Initial SSA environment: declared inputs as fresh version-0 variables
// (optionally pinned to a test valuation), everything else constant zero.
Env initial_env(BitBlaster& bb, const Program& p, const exec::TestInput* test,
                std::map<std::string, BitVec>& inputs) {
    Env env;
    int w = p.width;
    for (const auto& s : p.scalars) {
        if (s.is_input) {
            BitVec v = bb.fresh_vec(w, s.name, 0);
            inputs[s.name] = v;
            if (test) bb.fix_equal(v, bb.const_vec(test->values.at(s.name), w));
            env.scalars[s.name] = std::move(v);
        } else {
            env.scalars[s.name] = bb.const_vec(0, w);
        }
    }
    for (const auto& a : p.arrays) {
        std::vector<BitVec> cells(static_cast<size_t>(a.length));
        for (size_t i = 0; i < cells.size(); ++i) {
            if (a.is_input) {
                std::string nm = cell_name(a.name, i);
                cells[i] = bb.fresh_vec(w, nm, 0);
                inputs[nm] = cells[i];
                if (test)
                    bb.fix_equal(cells[i], bb.const_vec(test->values.at(nm), w));
            } else {
                cells[i] = bb.const_vec(0, w);
            }
        }
        env.arrays[a.name] = std::move(cells);
    }
    return env;
}

void check_trace(const Program& p, const std::vector<int>& trace) {
    int loc = p.initial_location;
    for (int tid : trace) {
        if (tid < 0 || tid >= static_cast<int>(p.transitions.size()))
            throw DisconnectedTrace("trace names an unknown transition");
        const Transition& t = p.transitions[static_cast<size_t>(tid)];
        if (t.source != loc)
            throw DisconnectedTrace("trace does not chain from the entry");
        loc = t.target;
    }
}

// --- whole-program encoder ----------------------------------------------------

class ProgramEncoder {
public:
    ProgramEncoder(const Program& p, int& var_count,
                   std::vector<sat::Clause>& clauses,
                   std::unordered_map<int, sat::VarMeta>* meta,
                   Granularity gran, std::map<SelectorKey, int>* plan,
                   std::vector<GroupDraft>* drafts)
        : p_(p),
          clauses_(clauses),
          bb_(var_count, clauses, meta),
          gran_(gran),
          plan_(plan),
          drafts_(drafts) {}

    void run() {
        G_.assign(static_cast<size_t>(p_.num_locations), kFalse);
        in_.assign(static_cast<size_t>(p_.num_locations), {});
        Env env = initial_env(bb_, p_, nullptr, inputs);
        for (const auto& s : p_.scalars) next_version_[s.name] = 1;
        for (const auto& a : p_.arrays) next_version_[a.name] = 1;

        for (int loc = 0; loc < p_.num_locations; ++loc) {
            size_t l = static_cast<size_t>(loc);
            if (loc == p_.initial_location) {
                G_[l] = kTrue;
            } else {
                if (in_[l].empty())
                    throw std::logic_error("location with no incoming edges");
                finalize_location(l, env);
            }
            encode_assertions(loc, env);
            encode_out_edges(loc, env);
        }
    }

    std::map<std::string, BitVec> inputs;
    std::vector<AssertionProbe> probes;

private:
    // Tags every clause emitted in its scope with the group selector of the
    // given transition; inactive for trusted or untagged encodings.
    class TagScope {
    public:
        TagScope(ProgramEncoder& e, const Transition& t) : e_(e) {
            if (!e_.plan_ || !relaxable(e_.p_, t)) return;
            draft_ = &(*e_.drafts_)[static_cast<size_t>(
                e_.plan_->at(selector_key(e_.gran_, t)))];
            start_ = e_.clauses_.size();
        }
        ~TagScope() {
            if (!draft_) return;
            for (size_t i = start_; i < e_.clauses_.size(); ++i) {
                e_.clauses_[i].push_back(-draft_->selector);
                draft_->members.push_back(static_cast<int>(i));
            }
        }

    private:
        ProgramEncoder& e_;
        GroupDraft* draft_ = nullptr;
        size_t start_ = 0;
    };

    // Joins control (guard = any incoming edge taken) and data (fresh merged
    // variable versions constrained per incoming edge).
    void finalize_location(size_t loc, Env& env) {
        auto& ins = in_[loc];
        if (ins.size() == 1) {
            G_[loc] = ins[0].first;
            env = std::move(ins[0].second);
            ins.clear();
            return;
        }
        std::vector<sat::Lit> takens;
        takens.reserve(ins.size());
        for (auto& [t, e] : ins) takens.push_back(t);
        G_[loc] = bb_.mk_or_many(takens);

        Env merged;
        for (auto& [name, first] : ins[0].second.scalars) {
            bool created = false;
            merged.scalars[name] = merge_vec(
                ins, name, next_version_[name],
                [&](const Env& e) -> const BitVec& { return e.scalars.at(name); },
                created);
            if (created) ++next_version_[name];
        }
        for (auto& [name, first] : ins[0].second.arrays) {
            std::vector<BitVec> cells(first.size());
            bool any_created = false;
            for (size_t c = 0; c < first.size(); ++c) {
                bool created = false;
                cells[c] = merge_vec(
                    ins, cell_name(name, c), next_version_[name],
                    [&](const Env& e) -> const BitVec& {
                        return e.arrays.at(name)[c];
                    },
                    created);
                any_created = any_created || created;
            }
            if (any_created) ++next_version_[name];
            merged.arrays[name] = std::move(cells);
        }
        env = std::move(merged);
        ins.clear();
    }

    // Returns the shared vector when all incoming edges agree, otherwise a
    // fresh vector constrained to equal each edge's value when that edge is
    // taken.
    template <typename Pick>
    BitVec merge_vec(std::vector<std::pair<sat::Lit, Env>>& ins,
                     const std::string& meta_name, int version, Pick pick,
                     bool& created) {
        const BitVec& first = pick(ins[0].second);
        bool same = true;
        for (size_t k = 1; k < ins.size() && same; ++k)
            same = pick(ins[k].second) == first;
        if (same) return first;
        created = true;
        BitVec phi = bb_.fresh_vec(p_.width, meta_name, version);
        for (auto& [taken, e] : ins) {
            const BitVec& v = pick(e);
            for (int i = 0; i < p_.width; ++i) {
                size_t b = static_cast<size_t>(i);
                bb_.add_clause({-taken, v[b], -phi[b]});
                bb_.add_clause({-taken, -v[b], phi[b]});
            }
        }
        return phi;
    }

    void encode_assertions(int loc, const Env& env) {
        for (int aid : p_.checks_at[static_cast<size_t>(loc)]) {
            const lang::AssertionSpec& spec =
                p_.assertions[static_cast<size_t>(aid)];
            sat::Lit g = G_[static_cast<size_t>(loc)];
            sat::Lit pred = encode_bool(bb_, *spec.predicate, env, p_.width);
            probes.push_back(
                AssertionProbe{spec.id, g, pred, bb_.mk_and(g, -pred)});
        }
    }

    void encode_out_edges(int loc, const Env& env) {
        size_t l = static_cast<size_t>(loc);
        sat::Lit branch_bit = 0;  // shared by the two edges of one branch
        for (int tid : p_.out_edges[l]) {
            const Transition& t = p_.transitions[static_cast<size_t>(tid)];
            sat::Lit taken = kFalse;
            Env next = env;
            switch (t.kind) {
                case TransKind::Guard: {
                    if (branch_bit == 0) {
                        TagScope tag(*this, t);
                        sat::Lit c = encode_bool(bb_, *t.cond, env, p_.width);
                        branch_bit = bb_.fresh_bit();
                        bb_.add_clause({branch_bit, -c});
                        bb_.add_clause({-branch_bit, c});
                    }
                    taken = bb_.mk_and(G_[l],
                                       t.cond_negated ? -branch_bit : branch_bit);
                    break;
                }
                case TransKind::Assume: {
                    // A reached assume is a hard constraint on the run, not a
                    // place where control can quietly stop: if it could, a
                    // relaxation would satisfy a pinned assertion simply by
                    // steering execution past the unrolling bound, making every
                    // loop counter a bogus diagnosis. Control always flows on.
                    sat::Lit a = encode_bool(bb_, *t.cond, env, p_.width);
                    if (G_[l] == kTrue) {
                        if (a != kTrue) bb_.add_clause({a});
                    } else if (G_[l] != kFalse && a != kTrue) {
                        bb_.add_clause({-G_[l], a});
                    }
                    taken = G_[l];
                    break;
                }
                case TransKind::Assign: {
                    BitVec v;
                    {
                        TagScope tag(*this, t);
                        BitVec r = encode_int(bb_, *t.rhs, env, p_.width);
                        v = bb_.fresh_vec(p_.width, t.var,
                                          next_version_[t.var]++);
                        bb_.fix_equal(v, r);
                    }
                    next.scalars.at(t.var) = std::move(v);
                    taken = G_[l];
                    break;
                }
                case TransKind::Store: {
                    std::vector<BitVec> cells;
                    {
                        TagScope tag(*this, t);
                        BitVec idx = encode_int(bb_, *t.index, env, p_.width);
                        BitVec val = encode_int(bb_, *t.rhs, env, p_.width);
                        std::vector<BitVec> muxed =
                            bb_.store(env.arrays.at(t.var), idx, val);
                        int ver = next_version_[t.var]++;
                        cells.resize(muxed.size());
                        for (size_t c = 0; c < muxed.size(); ++c) {
                            cells[c] = bb_.fresh_vec(
                                p_.width, cell_name(t.var, c), ver);
                            bb_.fix_equal(cells[c], muxed[c]);
                        }
                    }
                    next.arrays.at(t.var) = std::move(cells);
                    taken = G_[l];
                    break;
                }
                case TransKind::Skip: taken = G_[l]; break;
            }
            in_[static_cast<size_t>(t.target)].emplace_back(taken,
                                                            std::move(next));
        }
    }

    const Program& p_;
    std::vector<sat::Clause>& clauses_;
    BitBlaster bb_;
    Granularity gran_;
    std::map<SelectorKey, int>* plan_;
    std::vector<GroupDraft>* drafts_;

    std::vector<sat::Lit> G_;
    std::vector<std::vector<std::pair<sat::Lit, Env>>> in_;
    std::map<std::string, int> next_version_;
};

}  // namespace

// --- trace formula -------------------------------------------------------------

TraceFormula build_trace_formula(const lang::Program& program,
                                 const std::vector<int>& trace) {
    check_trace(program, trace);
    TraceFormula tf;
    tf.cnf.var_count = kConstVar;
    BitBlaster bb(tf.cnf.var_count, tf.cnf.clauses, &tf.cnf.var_meta);
    Env env = initial_env(bb, program, nullptr, tf.inputs);
    std::map<std::string, int> next_version;
    int w = program.width;

    for (int tid : trace) {
        const Transition& t = program.transitions[static_cast<size_t>(tid)];
        switch (t.kind) {
            case TransKind::Guard: {
                sat::Lit c = encode_bool(bb, *t.cond, env, w);
                bb.fix_true(t.cond_negated ? -c : c);
                break;
            }
            case TransKind::Assume:
                bb.fix_true(encode_bool(bb, *t.cond, env, w));
                break;
            case TransKind::Assign: {
                BitVec r = encode_int(bb, *t.rhs, env, w);
                BitVec v = bb.fresh_vec(w, t.var, ++next_version[t.var]);
                bb.fix_equal(v, r);
                env.scalars.at(t.var) = std::move(v);
                break;
            }
            case TransKind::Store: {
                BitVec idx = encode_int(bb, *t.index, env, w);
                BitVec val = encode_int(bb, *t.rhs, env, w);
                std::vector<BitVec> muxed =
                    bb.store(env.arrays.at(t.var), idx, val);
                int ver = ++next_version[t.var];
                std::vector<BitVec> cells(muxed.size());
                for (size_t c = 0; c < muxed.size(); ++c) {
                    cells[c] = bb.fresh_vec(w, cell_name(t.var, c), ver);
                    bb.fix_equal(cells[c], muxed[c]);
                }
                env.arrays.at(t.var) = std::move(cells);
                break;
            }
            case TransKind::Skip: break;
        }
    }
    for (const auto& [name, v] : env.scalars) tf.finals[name] = v;
    for (const auto& [name, cells] : env.arrays)
        for (size_t i = 0; i < cells.size(); ++i)
            tf.finals[cell_name(name, i)] = cells[i];
    return tf;
}

// --- whole-program formula and BMC ----------------------------------------------

ProgramFormula encode_program_formula(const lang::Program& program) {
    ProgramFormula pf;
    pf.cnf.var_count = kConstVar;
    ProgramEncoder enc(program, pf.cnf.var_count, pf.cnf.clauses,
                       &pf.cnf.var_meta, Granularity::Statement, nullptr,
                       nullptr);
    enc.run();
    pf.inputs = std::move(enc.inputs);
    pf.probes = std::move(enc.probes);
    return pf;
}

ProgramFormula encode_bmc(const lang::Program& program,
                          const BmcOptions& opts) {
    ProgramFormula pf = encode_program_formula(program);
    BitBlaster bb(pf.cnf.var_count, pf.cnf.clauses, &pf.cnf.var_meta);

    std::vector<sat::Lit> violations;
    int earliest_target = -1;
    for (const AssertionProbe& probe : pf.probes) {
        if (!opts.targets.empty() && opts.targets.count(probe.spec_id) == 0)
            continue;
        violations.push_back(probe.violated);
        if (earliest_target < 0) earliest_target = probe.spec_id;
    }
    if (violations.empty()) {
        // Nothing can be violated: the encoding is unsatisfiable by fiat.
        int v = ++pf.cnf.var_count;
        pf.cnf.clauses.push_back({v});
        pf.cnf.clauses.push_back({-v});
        return pf;
    }
    bb.fix_true(bb.mk_or_many(violations));

    if (opts.require_earlier_pass) {
        for (const AssertionProbe& probe : pf.probes) {
            if (probe.spec_id >= earliest_target) break;
            bb.add_clause({-probe.guard, probe.pred});
        }
    }

    for (const exec::TestInput& previous : opts.blocked) {
        sat::Clause differ;
        for (const auto& [name, vec] : pf.inputs) {
            unsigned long long bits = static_cast<unsigned long long>(
                exec::wrap(previous.values.at(name), program.width));
            for (size_t i = 0; i < vec.size(); ++i)
                differ.push_back((bits >> i) & 1 ? -vec[i] : vec[i]);
        }
        if (differ.empty()) {
            // No inputs to vary: blocking the only run makes it unsatisfiable.
            int v = ++pf.cnf.var_count;
            pf.cnf.clauses.push_back({v});
            pf.cnf.clauses.push_back({-v});
            return pf;
        }
        bb.add_clause(std::move(differ));
    }
    return pf;
}

exec::TestInput decode_inputs(const ProgramFormula& pf,
                              const std::vector<bool>& model) {
    exec::TestInput test;
    for (const auto& [name, vec] : pf.inputs)
        test.values[name] = decode_vec(vec, model);
    return test;
}

// --- localization instance -------------------------------------------------------

SelectoredFormula encode_selectored(const lang::Program& program,
                                    Granularity granularity,
                                    long long alpha) {
    if (alpha < 1) throw std::invalid_argument("alpha must be positive");

    SelectoredFormula sf;
    maxsat::MaxSatInstance& inst = sf.instance;
    inst.var_count = kConstVar;
    std::map<SelectorKey, int> plan;
    std::vector<GroupDraft> drafts;
    plan_selectors(program, granularity, inst.var_count, plan, drafts);

    ProgramEncoder enc(program, inst.var_count, inst.hard, nullptr,
                       granularity, &plan, &drafts);
    enc.run();
    sf.inputs = std::move(enc.inputs);
    sf.probes = std::move(enc.probes);

    for (GroupDraft& d : drafts) {
        maxsat::Location where;
        where.file = program.file;
        where.line =
            program.statements[static_cast<size_t>(d.statement_id)].line;
        where.iter = d.iter;
        maxsat::ClauseGroup group;
        group.selector = d.selector;
        group.statement_id = d.statement_id;
        group.where = std::move(where);
        group.loop_iter = d.iter;
        group.member_clauses = std::move(d.members);
        inst.groups.push_back(std::move(group));
        maxsat::SoftClause soft;
        soft.clause = {d.selector};
        soft.weight = alpha;
        soft.group = static_cast<int>(inst.groups.size()) - 1;
        inst.soft.push_back(std::move(soft));
    }
    return sf;
}

maxsat::MaxSatInstance build_instance(const lang::Program& program,
                                      const std::vector<int>& trace,
                                      const exec::TestInput& test,
                                      int assertion_id,
                                      Granularity granularity,
                                      long long alpha) {
    if (assertion_id < 0 ||
        assertion_id >= static_cast<int>(program.assertions.size()))
        throw std::invalid_argument("assertion id out of range");

    exec::ExecutionResult replay = exec::execute(program, test);
    if (replay.verdict != exec::Verdict::Fail ||
        replay.failed_assertion != assertion_id)
        throw NotAFailingTest("the test does not fail the given assertion");
    check_trace(program, trace);

    SelectoredFormula sf = encode_selectored(program, granularity, alpha);
    maxsat::MaxSatInstance inst = std::move(sf.instance);
    BitBlaster bb(inst.var_count, inst.hard, nullptr);

    // Pin the failing test's inputs.
    for (const auto& [name, vec] : sf.inputs)
        bb.fix_equal(vec, bb.const_vec(test.values.at(name), program.width));

    // Every assertion instance is pinned hard: alternative behaviors must
    // not trade one violation for another.
    for (const AssertionProbe& probe : sf.probes)
        bb.add_clause({-probe.guard, probe.pred});

    return inst;
}

void assign_loop_weights(maxsat::MaxSatInstance& instance, long long alpha,
                         int eta) {
    if (alpha < 1) throw std::invalid_argument("alpha must be positive");
    if (eta < 1) throw std::invalid_argument("eta must be positive");
    bool tagged = std::any_of(
        instance.groups.begin(), instance.groups.end(),
        [](const maxsat::ClauseGroup& g) { return g.loop_iter.has_value(); });
    if (!tagged)
        throw GranularityError(
            "loop weighting requires an iteration-granularity instance");
    for (maxsat::SoftClause& soft : instance.soft) {
        if (soft.group < 0) continue;
        const maxsat::ClauseGroup& g =
            instance.groups[static_cast<size_t>(soft.group)];
        long long k = g.loop_iter.value_or(0);
        if (k > eta)
            throw std::invalid_argument("unrolling index exceeds the bound");
        soft.weight = g.loop_iter ? alpha + eta - k : alpha + eta;
    }
}

}  // namespace faultsat::enc
