#include <sstream>
#include <stdexcept>

#include "faultsat/sat/cnf.hpp"

namespace faultsat::sat {

std::string write_dimacs(const Cnf& cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.var_count << ' ' << cnf.clauses.size() << '\n';
    for (const Clause& c : cnf.clauses) {
        for (Lit l : c) out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

Cnf read_dimacs(const std::string& text) {
    std::istringstream in(text);
    Cnf cnf;
    std::string tok;
    long declared_clauses = -1;
    while (in >> tok) {
        if (tok == "c") {
            std::string rest;
            std::getline(in, rest);
        } else if (tok == "p") {
            std::string fmt;
            in >> fmt;
            if (fmt != "cnf") throw std::runtime_error("not a DIMACS cnf file");
            in >> cnf.var_count >> declared_clauses;
        } else {
            if (declared_clauses < 0) throw std::runtime_error("clause before header");
            Clause c;
            Lit l = std::stoi(tok);
            while (l != 0) {
                c.push_back(l);
                if (!(in >> l)) throw std::runtime_error("unterminated clause");
            }
            cnf.add_clause(std::move(c));
        }
    }
    if (declared_clauses >= 0 && static_cast<long>(cnf.clauses.size()) != declared_clauses)
        throw std::runtime_error("clause count mismatch");
    return cnf;
}

}  // namespace faultsat::sat
