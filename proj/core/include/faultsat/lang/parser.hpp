#pragma once

#include <string>

#include "faultsat/lang/ast.hpp"

namespace faultsat::lang {

// Parses MiniC source (see docs/lang.md) into a TranslationUnit and runs
// semantic checks: declaration-before-use within a single scope per body,
// strict int/bool typing, positive constant array lengths, calls resolving
// to defined functions with matching arity, return only as the final
// statement of a value-returning function, and an acyclic call graph.
//
// Throws SyntaxError (with line/column), UndeclaredVariableError, or
// RecursionError.
TranslationUnit parse(const std::string& source, const std::string& file = "<memory>");

}  // namespace faultsat::lang
