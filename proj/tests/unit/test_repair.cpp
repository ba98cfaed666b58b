// Tests for the mutation-based repair engine: off-by-one constant repair and
// single-operator swaps over the lines reported by fault localization.
#include "doctest.h"

#include "faultsat/exec/interpreter.hpp"
#include "faultsat/lang/parser.hpp"
#include "faultsat/loc/localize.hpp"
#include "faultsat/repair/repair.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace faultsat;

namespace {

lang::Program load(const std::string& src, int eta = 8, int width = 8) {
  auto tu = lang::parse(src, "test.mc");
  return lang::lower_to_cfg(tu, eta, width);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("off-by-one repair fixes the figure-1 program by decrementing the constant") {
  auto p = load(read_file(FIXTURE_DIR "/fig1.mc"));
  auto fix = repair::repair_off_by_one(p, 1);
  REQUIRE(fix.has_value());
  CHECK(fix->location.line == 4);
  CHECK(fix->kind == repair::RepairKind::ConstantDecrement);
  CHECK(fix->original == "2");
  CHECK(fix->replacement == "1");
  CHECK(fix->verified);

  // The patched program passes the original failing test and has no
  // remaining counterexample.
  auto patched = load(fix->patched_source);
  exec::TestInput test;
  test.values["index"] = 1;
  CHECK(exec::execute(patched, test).verdict == exec::Verdict::Pass);
  CHECK(!loc::generate_counterexample(patched).found);
}

TEST_CASE("off-by-one repair accepts a user-supplied failing witness") {
  auto p = load(read_file(FIXTURE_DIR "/fig1.mc"));
  repair::RepairOptions opt;
  opt.test = exec::TestInput{};
  opt.test->values["index"] = 1;
  auto fix = repair::repair_off_by_one(p, 1, opt);
  REQUIRE(fix.has_value());
  CHECK(fix->location.line == 4);
  CHECK(fix->replacement == "1");

  // A passing witness is rejected outright.
  repair::RepairOptions bad;
  bad.test = exec::TestInput{};
  bad.test->values["index"] = 0;
  CHECK_THROWS_AS(repair::repair_off_by_one(p, 1, bad), enc::NotAFailingTest);
}

TEST_CASE("repair refuses programs without a failing execution") {
  auto p = load(
      "input int index;\n"
      "int Array[3];\n"
      "int ret;\n"
      "if (index != 1)\n"
      "    index = 2;\n"
      "else\n"
      "    index = 0;\n"
      "ret = Array[index];\n");
  CHECK_THROWS_AS(repair::repair_off_by_one(p, 0), repair::NotAFailingProgram);
  CHECK_THROWS_AS(repair::repair_operator(p, 0), repair::NotAFailingProgram);
}

TEST_CASE("a swapped-operator fault with no constants yields no off-by-one repair") {
  // The intended program computed x - x; the fault swapped the operator.
  auto p = load(
      "input int x;\n"
      "int y;\n"
      "y = x + x;\n"
      "assert(y == 0);\n");
  CHECK(!repair::repair_off_by_one(p, 0).has_value());

  auto swaps = repair::repair_operator(p, 0);
  REQUIRE(swaps.size() == 1);
  CHECK(swaps[0].location.line == 3);
  CHECK(swaps[0].kind == repair::RepairKind::OperatorSwap);
  CHECK(swaps[0].original == "+");
  CHECK(swaps[0].replacement == "-");
  CHECK(swaps[0].verified);

  auto patched = load(swaps[0].patched_source);
  CHECK(!loc::generate_counterexample(patched).found);
}

TEST_CASE("comparison repair restores the intended inequality and never edits the assertion") {
  // The guard should accept x = 0; only the >= swap repairs every input.
  auto p = load(
      "input int x;\n"
      "int y;\n"
      "y = 0;\n"
      "if (x > 0)\n"
      "    y = 1;\n"
      "assert(y == 1 || x < 0);\n");
  auto swaps = repair::repair_operator(p, 0);
  REQUIRE(!swaps.empty());
  bool found_ge = false;
  for (const auto& c : swaps) {
    // Tokens of the assertion itself are never mutation targets, even though
    // weakening `<` to `<=` there would trivially "verify".
    CHECK(c.location.line != 6);
    if (c.location.line == 4 && c.replacement == ">=") {
      found_ge = true;
      CHECK(c.original == ">");
    }
  }
  CHECK(found_ge);
}

TEST_CASE("constant mutation that overflows the bit width is rejected rather than wrapped") {
  // If 127 + 1 wrapped to -128 the increment would satisfy the assertion;
  // rejecting it leaves no repair at all.
  auto p = load(
      "input int x;\n"
      "int y;\n"
      "y = 127;\n"
      "assert(y == 0 - 128);\n");
  CHECK(!repair::repair_off_by_one(p, 0).has_value());
}

TEST_CASE("repair never mutates trusted statements") {
  const std::string src =
      "input int x;\n"
      "int y;\n"
      "int z;\n"
      "y = x + 1;\n"
      "z = y + 1;\n"
      "assert(z == x);\n";

  // Untrusted: both additions admit a verified swap to subtraction.
  auto open = load(src);
  auto all = repair::repair_operator(open, 0);
  std::set<int> lines;
  for (const auto& c : all) {
    CHECK(c.replacement == "-");
    lines.insert(c.location.line);
  }
  CHECK(lines == std::set<int>{4, 5});

  // With line 4 trusted, only line 5 may be touched.
  auto guarded = load(src);
  lang::mark_trusted(guarded, {4}, {});
  auto restricted = repair::repair_operator(guarded, 0);
  REQUIRE(restricted.size() == 1);
  CHECK(restricted[0].location.line == 5);
  CHECK(restricted[0].original == "+");
  CHECK(restricted[0].replacement == "-");
  CHECK(!repair::repair_off_by_one(guarded, 0).has_value());
}

TEST_CASE("fix verification checks both the model checker and the witness tests") {
  auto faulty = load(read_file(FIXTURE_DIR "/fig1.mc"));
  CHECK(!repair::verify_fix(faulty, {}));

  auto corrected = load(
      "input int index;\n"
      "int Array[3];\n"
      "int ret;\n"
      "if (index != 1)\n"
      "    index = 2;\n"
      "else\n"
      "    index = 0;\n"
      "ret = Array[index];\n");
  exec::TestInput one;
  one.values["index"] = 1;
  CHECK(repair::verify_fix(corrected, {one}));

  // An assertion-free loop has no counterexample, but a witness that
  // exhausts the unrolling bound still fails verification.
  auto loop = load(
      "input int n;\n"
      "int i;\n"
      "while (i < n)\n"
      "    i = i + 1;\n");
  exec::TestInput small;
  small.values["n"] = 3;
  exec::TestInput large;
  large.values["n"] = 100;
  CHECK(repair::verify_fix(loop, {small}));
  CHECK(!repair::verify_fix(loop, {small, large}));
}

TEST_CASE("repair results are deterministic at a fixed seed") {
  auto p = load(
      "input int x;\n"
      "int y;\n"
      "int z;\n"
      "y = x + 1;\n"
      "z = y + 1;\n"
      "assert(z == x);\n");
  auto a = repair::repair_operator(p, 0);
  auto b = repair::repair_operator(p, 0);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].location.line == b[i].location.line);
    CHECK(a[i].span_begin == b[i].span_begin);
    CHECK(a[i].replacement == b[i].replacement);
  }
}
