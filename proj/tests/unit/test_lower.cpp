#include <doctest.h>

#include <set>

#include "faultsat/lang/parser.hpp"
#include "faultsat/lang/program.hpp"

using namespace faultsat::lang;

namespace {

// Structural well-formedness every lowered program must satisfy.
void check_invariants(const Program& p) {
  std::set<int> stmts_seen;
  for (const auto& t : p.transitions) {
    CHECK(t.source < t.target);
    CHECK(t.source >= 0);
    CHECK(t.target < p.num_locations);
    CHECK(t.artifact == (t.statement_id < 0));
    if (t.statement_id >= 0) {
      REQUIRE(t.statement_id < static_cast<int>(p.statements.size()));
      stmts_seen.insert(t.statement_id);
      CHECK(p.statements[t.statement_id].line == t.line);
    }
  }
  // Every statement owns at least one transition.
  CHECK(stmts_seen.size() == p.statements.size());
  for (const auto& a : p.assertions) {
    CHECK(a.location >= 0);
    CHECK(a.location < p.num_locations);
    if (a.owner_transition >= 0) CHECK(a.owner_transition < static_cast<int>(p.transitions.size()));
  }
}

int count_kind(const Program& p, TransKind k) {
  int n = 0;
  for (const auto& t : p.transitions)
    if (t.kind == k) ++n;
  return n;
}

}  // namespace

TEST_CASE("loop-free lowering is independent of the unroll bound") {
  const char* src = "input int n;\nint r = 0;\nif (n > 0) r = n; else r = 0 - n;\nassert(r >= 0);\n";
  TranslationUnit tu = parse(src);
  Program p1 = lower_to_cfg(tu, 1);
  Program p9 = lower_to_cfg(tu, 9);
  check_invariants(p1);
  CHECK(p1.num_locations == p9.num_locations);
  CHECK(p1.transitions.size() == p9.transitions.size());
  CHECK(p1.statements.size() == p9.statements.size());
  CHECK(p1.assertions.size() == p9.assertions.size());
  for (size_t i = 0; i < p1.transitions.size(); ++i) {
    CHECK(p1.transitions[i].kind == p9.transitions[i].kind);
    CHECK(p1.transitions[i].source == p9.transitions[i].source);
    CHECK(p1.transitions[i].target == p9.transitions[i].target);
  }
}

TEST_CASE("while unrolls into tagged guarded copies plus an unwinding assumption") {
  TranslationUnit tu = parse("int x;\nwhile (x < 2) x = x + 1;\n");
  Program p = lower_to_cfg(tu, 2);
  check_invariants(p);

  // Two enter/leave guard pairs tagged with iterations 1 and 2.
  std::set<int> iters;
  int enters = 0, leaves = 0;
  for (const auto& t : p.transitions)
    if (t.kind == TransKind::Guard) {
      REQUIRE(t.loop.has_value());
      iters.insert(t.loop->iter);
      if (t.cond_negated)
        ++leaves;
      else
        ++enters;
    }
  CHECK(enters == 2);
  CHECK(leaves == 2);
  CHECK(iters == std::set<int>{1, 2});

  // Body copies share one statement id but carry distinct iteration tags.
  std::set<std::pair<int, int>> body_tags;
  for (const auto& t : p.transitions)
    if (t.kind == TransKind::Assign && t.loop) body_tags.insert({t.statement_id, t.loop->iter});
  REQUIRE(body_tags.size() == 2);
  CHECK(body_tags.begin()->first == std::next(body_tags.begin())->first);

  // Exactly one unwinding assumption, artifact, negated guard.
  int unwinds = 0;
  for (const auto& t : p.transitions)
    if (t.kind == TransKind::Assume) {
      CHECK(t.artifact);
      ++unwinds;
    }
  CHECK(unwinds == 1);
}

TEST_CASE("unroll bound must be positive") {
  TranslationUnit tu = parse("int x;\nwhile (x < 2) x = x + 1;\n");
  CHECK_THROWS_AS(lower_to_cfg(tu, 0), UnrollBoundError);
  CHECK_THROWS_AS(lower_to_cfg(tu, -3), UnrollBoundError);
}

TEST_CASE("division and modulus produce guard assertions") {
  TranslationUnit tu = parse("input int a;\nint q = 10 / a;\nint m = 10 % 3;\n");
  Program p = lower_to_cfg(tu, 1);
  check_invariants(p);
  int guards = 0;
  for (const auto& s : p.assertions)
    if (s.kind == AssertKind::DivisionGuard) ++guards;
  CHECK(guards == 2);
}

TEST_CASE("stores carry bounds checks on the target cell") {
  TranslationUnit tu = parse("input int i;\nint a[4];\na[i] = a[i + 1] + 1;\n");
  Program p = lower_to_cfg(tu, 1);
  check_invariants(p);
  int bounds = 0;
  for (const auto& s : p.assertions)
    if (s.kind == AssertKind::ArrayBounds) ++bounds;
  // Two for the stored-to cell, two for the read.
  CHECK(bounds == 4);
}

TEST_CASE("calls are inlined with renamed locals and the call line owns the bindings") {
  const char* src =
      "int square(int v) {\n"
      "    int s = v * v;\n"
      "    return s;\n"
      "}\n"
      "input int n;\n"
      "int out = square(n);\n";
  TranslationUnit tu = parse(src);
  Program p = lower_to_cfg(tu, 1);
  check_invariants(p);

  // No Call expressions survive lowering; fresh names carry the site tag.
  bool has_renamed = false;
  for (const auto& s : p.scalars)
    if (s.name.find('@') != std::string::npos) has_renamed = true;
  CHECK(has_renamed);

  // The argument binding is attributed to the call site's line (6), the
  // body statements to their own lines (2, 3).
  std::set<int> lines;
  for (const auto& st : p.statements) lines.insert(st.line);
  CHECK(lines.count(6) == 1);
  CHECK(lines.count(2) == 1);
  CHECK(lines.count(3) == 1);

  // Function-body statements carry their origin for trusted-code marking.
  int in_fn = 0;
  for (const auto& st : p.statements)
    if (st.function == "square") ++in_fn;
  CHECK(in_fn == 2);  // the local decl-assign and the return copy

  mark_trusted(p, {}, {"square"});
  int trusted = 0;
  for (const auto& st : p.statements)
    if (st.trusted) ++trusted;
  CHECK(trusted == 2);
}

TEST_CASE("two call sites get independent statement instances") {
  const char* src =
      "int inc(int v) {\n"
      "    return v + 1;\n"
      "}\n"
      "input int n;\n"
      "int a = inc(n);\n"
      "int b = inc(a);\n";
  TranslationUnit tu = parse(src);
  Program p = lower_to_cfg(tu, 1);
  check_invariants(p);
  // Line 2 (the return) appears once per call site.
  int line2 = 0;
  for (const auto& st : p.statements)
    if (st.line == 2) ++line2;
  CHECK(line2 == 2);
}

TEST_CASE("nested loops tag transitions with the innermost context") {
  const char* src =
      "int i;\nint j;\nint acc;\n"
      "while (i < 2) {\n"
      "    j = 0;\n"
      "    while (j < 2) {\n"
      "        acc = acc + 1;\n"
      "        j = j + 1;\n"
      "    }\n"
      "    i = i + 1;\n"
      "}\n";
  TranslationUnit tu = parse(src);
  Program p = lower_to_cfg(tu, 2);
  check_invariants(p);

  std::set<int> loop_ids;
  for (const auto& t : p.transitions)
    if (t.loop) loop_ids.insert(t.loop->loop_id);
  CHECK(loop_ids.size() == 2);

  // The innermost statement (acc update) is tagged with the inner loop.
  int inner_loop = -1;
  for (const auto& st : p.statements)
    if (st.text.find("acc = acc + 1") != std::string::npos) {
      REQUIRE(st.loop_id.has_value());
      inner_loop = *st.loop_id;
    }
  REQUIRE(inner_loop >= 0);
  int tagged = 0;
  for (const auto& t : p.transitions)
    if (t.kind == TransKind::Assign && t.loop && t.loop->loop_id == inner_loop &&
        !t.var.empty() && t.var == "acc")
      ++tagged;
  // inner body appears 2 (outer) * 2 (inner) = 4 times
  CHECK(tagged == 4);
}

TEST_CASE("assert statements keep control flow and attach explicit checks") {
  TranslationUnit tu = parse("int x = 3;\nassert(x == 3);\nx = 4;\n");
  Program p = lower_to_cfg(tu, 1);
  check_invariants(p);
  REQUIRE(p.assertions.size() == 1);
  CHECK(p.assertions[0].kind == AssertKind::Explicit);
  CHECK(p.assertions[0].owner_transition == -1);
  CHECK(p.assertions[0].line == 2);
  // The assert still owns a (skip) transition so the statement table is total.
  CHECK(count_kind(p, TransKind::Skip) >= 1);
}

TEST_CASE("trusted marking by line") {
  TranslationUnit tu = parse("int x = 1;\nint y = 2;\nint z = 3;\n");
  Program p = lower_to_cfg(tu, 1);
  mark_trusted(p, {2, 3}, {});
  CHECK_FALSE(p.statements[0].trusted);
  CHECK(p.statements[1].trusted);
  CHECK(p.statements[2].trusted);
}
