#pragma once

#include <string>
#include <vector>

#include "faultsat/lang/ast.hpp"

namespace faultsat::lang {

enum class Tok {
    // literals / identifiers
    IntLit,
    Ident,
    // keywords
    KwInt,
    KwVoid,
    KwInput,
    KwIf,
    KwElse,
    KwWhile,
    KwAssert,
    KwAssume,
    KwReturn,
    KwTrue,
    KwFalse,
    // punctuation and operators
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semicolon,
    Comma,
    Assign,  // =
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Ne,
    AndAnd,
    OrOr,
    Not,
    Eof,
};

struct Token {
    Tok kind = Tok::Eof;
    Span span;
    std::string text;      // raw lexeme
    long long value = 0;   // Tok::IntLit
};

// Tokenizes MiniC source. Comments (// and /* */) and whitespace are
// skipped; byte-exact spans are preserved on every token.
// Throws SyntaxError on unknown characters or malformed literals.
std::vector<Token> lex(const std::string& source);

}  // namespace faultsat::lang
