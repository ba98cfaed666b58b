#include <sstream>
#include <stdexcept>

#include "faultsat/maxsat/instance.hpp"

namespace faultsat::maxsat {

std::string write_wcnf(const MaxSatInstance& inst) {
    std::ostringstream out;
    const int64_t top = inst.top_weight();
    for (const ClauseGroup& g : inst.groups) {
        out << "c group " << g.selector << ' ' << g.where.file << ':' << g.where.line;
        if (g.loop_iter) out << " iter " << *g.loop_iter;
        out << '\n';
    }
    out << "p wcnf " << inst.var_count << ' ' << inst.hard.size() + inst.soft.size() << ' '
        << top << '\n';
    for (const sat::Clause& c : inst.hard) {
        out << top;
        for (sat::Lit l : c) out << ' ' << l;
        out << " 0\n";
    }
    for (const SoftClause& c : inst.soft) {
        out << c.weight;
        for (sat::Lit l : c.clause) out << ' ' << l;
        out << " 0\n";
    }
    return out.str();
}

MaxSatInstance read_wcnf(const std::string& text) {
    std::istringstream in(text);
    MaxSatInstance inst;
    std::string line;
    int64_t top = -1;
    long declared = -1;
    long parsed = 0;
    std::vector<ClauseGroup> pending_groups;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string kind;
            if (ls >> kind && kind == "group") {
                ClauseGroup g;
                std::string loc;
                if (!(ls >> g.selector >> loc)) throw std::runtime_error("bad group comment");
                auto colon = loc.rfind(':');
                if (colon == std::string::npos) throw std::runtime_error("bad group location");
                g.where.file = loc.substr(0, colon);
                g.where.line = std::stoi(loc.substr(colon + 1));
                std::string iter_kw;
                if (ls >> iter_kw) {
                    if (iter_kw != "iter") throw std::runtime_error("bad group comment");
                    int k;
                    if (!(ls >> k)) throw std::runtime_error("bad group iter");
                    g.loop_iter = k;
                    g.where.iter = k;
                }
                pending_groups.push_back(std::move(g));
            }
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            ls >> fmt;
            if (fmt != "wcnf") throw std::runtime_error("not a DIMACS wcnf file");
            if (!(ls >> inst.var_count >> declared >> top))
                throw std::runtime_error("bad wcnf header");
            continue;
        }
        if (top < 0) throw std::runtime_error("clause before wcnf header");
        int64_t w = std::stoll(tok);
        sat::Clause c;
        sat::Lit l;
        while (ls >> l && l != 0) c.push_back(l);
        if (l != 0) throw std::runtime_error("unterminated clause");
        ++parsed;
        if (w == top) {
            inst.hard.push_back(std::move(c));
        } else {
            if (w < 1 || w > top) throw std::runtime_error("soft weight out of range");
            inst.soft.push_back(SoftClause{std::move(c), w, -1});
        }
    }
    if (declared >= 0 && parsed != declared) throw std::runtime_error("clause count mismatch");

    // Re-attach groups: a selector's group collects the hard clauses that
    // contain its negation; its soft clause is the matching unit.
    for (ClauseGroup& g : pending_groups) {
        g.member_clauses.clear();
        for (int ci = 0; ci < static_cast<int>(inst.hard.size()); ++ci)
            for (sat::Lit l : inst.hard[static_cast<size_t>(ci)])
                if (l == -g.selector) {
                    g.member_clauses.push_back(ci);
                    break;
                }
        int gi = static_cast<int>(inst.groups.size());
        for (SoftClause& scl : inst.soft)
            if (scl.clause == sat::Clause{g.selector}) scl.group = gi;
        inst.groups.push_back(std::move(g));
    }
    inst.validate();
    return inst;
}

}  // namespace faultsat::maxsat
