#include <doctest.h>

#include <fstream>
#include <sstream>

#include "faultsat/lang/parser.hpp"
#include "faultsat/lang/printer.hpp"
#include "faultsat/lang/program.hpp"

using namespace faultsat::lang;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parses the full statement repertoire") {
  const char* src = R"(
input int n;
int acc = 0;
int buf[4];
int i;
while (i < n && i < 4) {
    buf[i] = 2 * i + 1;
    i = i + 1;
}
if (n >= 2)
    acc = buf[1];
else {
    acc = buf[0] - 1;
}
assume(acc > -100);
assert(acc >= 0 || n < 0);
)";
  TranslationUnit tu = parse(src, "full.mc");
  CHECK(tu.functions.empty());
  REQUIRE(tu.main_body.size() == 8);
  CHECK(tu.main_body[0]->kind == Stmt::Kind::InputDecl);
  CHECK(tu.main_body[1]->kind == Stmt::Kind::VarDecl);
  CHECK(tu.main_body[2]->kind == Stmt::Kind::VarDecl);
  CHECK(tu.main_body[2]->array_size == 4);
  CHECK(tu.main_body[4]->kind == Stmt::Kind::While);
  CHECK(tu.main_body[5]->kind == Stmt::Kind::If);
  CHECK(tu.main_body[6]->kind == Stmt::Kind::Assume);
  CHECK(tu.main_body[7]->kind == Stmt::Kind::Assert);
}

TEST_CASE("operator precedence shapes the tree") {
  TranslationUnit tu = parse("int x = 1 + 2 * 3;\n");
  const Expr& e = *tu.main_body[0]->value;
  REQUIRE(e.kind == Expr::Kind::Binary);
  CHECK(e.bin_op == BinOp::Add);
  CHECK(e.args[1]->bin_op == BinOp::Mul);

  TranslationUnit tu2 = parse("int y = (1 + 2) * 3;\n");
  const Expr& e2 = *tu2.main_body[0]->value;
  CHECK(e2.bin_op == BinOp::Mul);
  CHECK(e2.args[0]->bin_op == BinOp::Add);
}

TEST_CASE("spans index the original text exactly") {
  std::string src = "int x = 10 + y3;\n";
  CHECK_THROWS_AS(parse(src), UndeclaredVariableError);
  std::string ok = "int y3 = 2; int x = 10 + y3;\n";
  TranslationUnit tu = parse(ok);
  const Expr& sum = *tu.main_body[1]->value;
  CHECK(ok.substr(sum.span.begin, sum.span.end - sum.span.begin) == "10 + y3");
  CHECK(ok.substr(sum.op_span.begin, sum.op_span.end - sum.op_span.begin) == "+");
  const Expr& lit = *sum.args[0];
  CHECK(ok.substr(lit.span.begin, lit.span.end - lit.span.begin) == "10");
}

TEST_CASE("statement lines are recorded for attribution") {
  TranslationUnit tu = parse("int a = 1;\nint b = 2; int c = 3;\n");
  CHECK(tu.main_body[0]->span.line == 1);
  CHECK(tu.main_body[1]->span.line == 2);
  CHECK(tu.main_body[2]->span.line == 2);
}

TEST_CASE("functions parse and inline targets resolve") {
  const char* src = R"(
int twice(int v) {
    return v + v;
}
void touch(int k) {
    int unused = k;
}
input int n;
int r = twice(n);
touch(3);
)";
  TranslationUnit tu = parse(src);
  REQUIRE(tu.functions.size() == 2);
  CHECK(tu.functions[0].returns_value);
  CHECK_FALSE(tu.functions[1].returns_value);
  CHECK(tu.main_body[1]->value->kind == Expr::Kind::Call);
  CHECK(tu.main_body[2]->kind == Stmt::Kind::CallStmt);
}

TEST_CASE("rejections") {
  SUBCASE("syntax error carries line and column") {
    try {
      parse("int x = ;\n");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 1);
      CHECK(e.column == 9);
    }
  }
  SUBCASE("undeclared variable") {
    CHECK_THROWS_AS(parse("x = 1;\n"), UndeclaredVariableError);
    CHECK_THROWS_AS(parse("int a = b;\n"), UndeclaredVariableError);
  }
  SUBCASE("use before declaration in the main body") {
    CHECK_THROWS_AS(parse("a = 1; int a;\n"), UndeclaredVariableError);
  }
  SUBCASE("recursion is rejected") {
    CHECK_THROWS_AS(parse("int f(int x) { int y = f(x); return y; }\n"), RecursionError);
    CHECK_THROWS_AS(
        parse("int f(int x) { int y = g(x); return y; }\n"
              "int g(int x) { int y = f(x); return y; }\n"),
        RecursionError);
  }
  SUBCASE("type discipline") {
    CHECK_THROWS_AS(parse("int x = true;\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int x = 1; if (x) x = 2;\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int x = 1; assert(x + 1);\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int x = 1 < 2;\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int x = 1; int y = x && 1;\n"), SyntaxError);
  }
  SUBCASE("array misuse") {
    CHECK_THROWS_AS(parse("int a[0];\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int a[3]; int x = a;\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int x = 1; int y = x[0];\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int a[3]; a = 1;\n"), SyntaxError);
  }
  SUBCASE("redeclaration") {
    CHECK_THROWS_AS(parse("int a = 1; int a = 2;\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int g = 1; int f(int g) { return g; }\n"), SyntaxError);
  }
  SUBCASE("return placement") {
    CHECK_THROWS_AS(parse("int x = 1; return x;\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int f(int x) { return x; int y = 1; return y; }\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int f(int x) { int y = x; }\n"), SyntaxError);
    CHECK_THROWS_AS(parse("void f(int x) { return x; }\n"), SyntaxError);
  }
  SUBCASE("calls only as full right-hand sides") {
    CHECK_THROWS_AS(parse("int f(int x) { return x; } int y = 1 + f(2);\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int f(int x) { return x; } int y = f(f(2));\n"), SyntaxError);
  }
  SUBCASE("calls validate arity and existence") {
    CHECK_THROWS_AS(parse("int y = nosuch(1);\n"), SyntaxError);
    CHECK_THROWS_AS(parse("int f(int x) { return x; } int y = f(1, 2);\n"), SyntaxError);
    CHECK_THROWS_AS(parse("void p(int x) { int q = x; } int y = p(1);\n"), SyntaxError);
  }
  SUBCASE("input declarations only at the top level") {
    CHECK_THROWS_AS(parse("int x = 1; if (x > 0) { input int k; }\n"), SyntaxError);
    CHECK_THROWS_AS(parse("void f(int x) { input int k; }\n"), SyntaxError);
  }
}

TEST_CASE("pretty-print round trip is structurally identical") {
  const char* sources[] = {
      "input int n;\nint acc = 0;\nwhile (acc < n) acc = acc + 1;\nassert(acc >= n);\n",
      "int a[3];\na[0] = 1; a[1] = a[0] * 2;\nif (a[1] != 2) a[2] = 0 - 1; else a[2] = 7 % 3;\n",
      "int f(int p, int q) { return p - q; }\ninput int z;\nint w = f(z, 2);\n",
      "int x = 1;\nif (!(x > 0) || x == 5 && true) x = x / 2;\n",
      "int v = -3;\nint u = - -v;\n",
  };
  for (const char* src : sources) {
    TranslationUnit first = parse(src);
    std::string printed = to_source(first);
    CAPTURE(printed);
    TranslationUnit second = parse(printed);
    CHECK(structurally_equal(first, second));
    // And printing again is a fixed point.
    CHECK(to_source(second) == printed);
  }
}

TEST_CASE("bounds-check metadata of the motivating example") {
  std::string src = read_file(std::string(FIXTURE_DIR) + "/fig1.mc");
  TranslationUnit tu = parse(src, "fig1.mc");

  int inputs = 0, arrays = 0;
  for (const auto& s : tu.main_body) {
    if (s->kind == Stmt::Kind::InputDecl) ++inputs;
    if (s->kind == Stmt::Kind::VarDecl && s->array_size >= 0) ++arrays;
  }
  CHECK(inputs == 1);
  CHECK(arrays == 1);
  bool has_if = false;
  for (const auto& s : tu.main_body)
    if (s->kind == Stmt::Kind::If && !s->else_body.empty()) has_if = true;
  CHECK(has_if);

  // One array read: a lower and an upper implicit bounds check.
  Program p = lower_to_cfg(tu, 1);
  int bounds = 0;
  for (const auto& a : p.assertions)
    if (a.kind == AssertKind::ArrayBounds) ++bounds;
  CHECK(bounds == 2);
}

TEST_CASE("trivial identity assertion") {
  TranslationUnit tu = parse("int x; assert(x == x);\n");
  REQUIRE(tu.main_body.size() == 2);
  CHECK(tu.main_body[1]->kind == Stmt::Kind::Assert);
}
