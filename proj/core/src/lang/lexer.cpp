#include "faultsat/lang/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace faultsat::lang {

namespace {

const std::unordered_map<std::string, Tok>& keywords() {
    static const std::unordered_map<std::string, Tok> kw = {
        {"int", Tok::KwInt},       {"void", Tok::KwVoid},     {"input", Tok::KwInput},
        {"if", Tok::KwIf},         {"else", Tok::KwElse},     {"while", Tok::KwWhile},
        {"assert", Tok::KwAssert}, {"assume", Tok::KwAssume}, {"return", Tok::KwReturn},
        {"true", Tok::KwTrue},     {"false", Tok::KwFalse},
    };
    return kw;
}

}  // namespace

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    const size_t n = src.size();

    auto advance = [&](size_t count) {
        for (size_t k = 0; k < count && i < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    auto push = [&](Tok kind, size_t begin, size_t len, int tline, int tcol) {
        Token t;
        t.kind = kind;
        t.span = Span{static_cast<int>(begin), static_cast<int>(begin + len), tline, tcol};
        t.text = src.substr(begin, len);
        out.push_back(std::move(t));
    };

    while (i < n) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            while (i < n && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            int start_line = line, start_col = col;
            advance(2);
            while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
            if (i + 1 >= n) throw SyntaxError("unterminated block comment", start_line, start_col);
            advance(2);
            continue;
        }

        int tline = line, tcol = col;
        size_t begin = i;

        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t len = 0;
            while (begin + len < n && std::isdigit(static_cast<unsigned char>(src[begin + len]))) ++len;
            if (begin + len < n &&
                (std::isalpha(static_cast<unsigned char>(src[begin + len])) || src[begin + len] == '_'))
                throw SyntaxError("malformed integer literal", tline, tcol);
            advance(len);
            push(Tok::IntLit, begin, len, tline, tcol);
            try {
                out.back().value = std::stoll(out.back().text);
            } catch (const std::out_of_range&) {
                throw SyntaxError("integer literal out of range", tline, tcol);
            }
            continue;
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t len = 0;
            while (begin + len < n && (std::isalnum(static_cast<unsigned char>(src[begin + len])) ||
                                       src[begin + len] == '_'))
                ++len;
            advance(len);
            auto it = keywords().find(src.substr(begin, len));
            push(it != keywords().end() ? it->second : Tok::Ident, begin, len, tline, tcol);
            continue;
        }

        auto two = [&](char a, char b) { return c == a && i + 1 < n && src[i + 1] == b; };
        Tok kind;
        size_t len = 1;
        if (two('<', '=')) { kind = Tok::Le; len = 2; }
        else if (two('>', '=')) { kind = Tok::Ge; len = 2; }
        else if (two('=', '=')) { kind = Tok::EqEq; len = 2; }
        else if (two('!', '=')) { kind = Tok::Ne; len = 2; }
        else if (two('&', '&')) { kind = Tok::AndAnd; len = 2; }
        else if (two('|', '|')) { kind = Tok::OrOr; len = 2; }
        else {
            switch (c) {
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case '{': kind = Tok::LBrace; break;
                case '}': kind = Tok::RBrace; break;
                case '[': kind = Tok::LBracket; break;
                case ']': kind = Tok::RBracket; break;
                case ';': kind = Tok::Semicolon; break;
                case ',': kind = Tok::Comma; break;
                case '=': kind = Tok::Assign; break;
                case '+': kind = Tok::Plus; break;
                case '-': kind = Tok::Minus; break;
                case '*': kind = Tok::Star; break;
                case '/': kind = Tok::Slash; break;
                case '%': kind = Tok::Percent; break;
                case '<': kind = Tok::Lt; break;
                case '>': kind = Tok::Gt; break;
                case '!': kind = Tok::Not; break;
                default:
                    throw SyntaxError(std::string("unexpected character '") + c + "'", tline, tcol);
            }
        }
        advance(len);
        push(kind, begin, len, tline, tcol);
    }

    Token eof;
    eof.kind = Tok::Eof;
    eof.span = Span{static_cast<int>(n), static_cast<int>(n), line, col};
    out.push_back(std::move(eof));
    return out;
}

}  // namespace faultsat::lang
