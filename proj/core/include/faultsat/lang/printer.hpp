#pragma once

#include <string>

#include "faultsat/lang/ast.hpp"

namespace faultsat::lang {

// Canonical source rendering. Re-parsing the result yields a structurally
// identical TranslationUnit (round-trip property).
std::string to_source(const TranslationUnit& tu);
std::string to_source(const Stmt& s, int indent = 0);
std::string to_source(const Expr& e);

// Single-line rendering of a statement for reports and statement tables
// (bodies of compound statements are elided: "while (i < n) ...").
std::string one_line(const Stmt& s);

}  // namespace faultsat::lang
