#include <memory>
#include <vector>

#include "doctest.h"
#include "faultsat/enc/bitblast.hpp"
#include "faultsat/exec/arith.hpp"
#include "faultsat/sat/cnf.hpp"
#include "faultsat/sat/solver.hpp"

using namespace faultsat;
using enc::BitBlaster;
using enc::BitVec;
using enc::kConstVar;
using enc::kFalse;
using enc::kTrue;

namespace {

// A CNF with the constant variable pre-allocated and a blaster writing into it.
struct Circuit {
  sat::Cnf cnf;
  std::unique_ptr<BitBlaster> bb;

  Circuit() {
    cnf.var_count = kConstVar;
    bb = std::make_unique<BitBlaster>(cnf.var_count, cnf.clauses,
                     &cnf.var_meta);
  }
};

// Solver over the circuit with the constant variable pinned true, so that
// assumptions over folded (constant) literals behave like the encoding says.
sat::Solver make_solver(const sat::Cnf& cnf) {
  sat::Solver s;
  s.add_cnf(cnf);
  s.add_clause({kTrue});
  return s;
}

// Appends assumptions pinning every bit of `v` to the two's-complement
// pattern of `value`.
void assume_pattern(std::vector<sat::Lit>& as, const BitVec& v,
          long long value) {
  unsigned long long bits = static_cast<unsigned long long>(value);
  for (size_t i = 0; i < v.size(); ++i)
    as.push_back((bits >> i) & 1 ? v[i] : -v[i]);
}

constexpr int kW = 4;

long long svalue(int pattern) { return exec::wrap(pattern, kW); }

}  // namespace

TEST_CASE("four-bit add, sub, mul, neg agree with wraparound semantics") {
  struct Case {
    const char* name;
    long long (*oracle)(long long, long long);
    BitVec (*build)(BitBlaster&, const BitVec&, const BitVec&);
  };
  const Case cases[] = {
    {"add", [](long long a, long long b) { return exec::wrap(a + b, kW); },
    [](BitBlaster& bb, const BitVec& a, const BitVec& b) {
      return bb.add(a, b);
    }},
    {"sub", [](long long a, long long b) { return exec::wrap(a - b, kW); },
    [](BitBlaster& bb, const BitVec& a, const BitVec& b) {
      return bb.sub(a, b);
    }},
    {"mul", [](long long a, long long b) { return exec::wrap(a * b, kW); },
    [](BitBlaster& bb, const BitVec& a, const BitVec& b) {
      return bb.mul(a, b);
    }},
    {"neg", [](long long a, long long) { return exec::wrap(-a, kW); },
    [](BitBlaster& bb, const BitVec& a, const BitVec&) {
      return bb.neg(a);
    }},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    Circuit ct;
    BitVec a = ct.bb->fresh_vec(kW);
    BitVec b = ct.bb->fresh_vec(kW);
    BitVec r = c.build(*ct.bb, a, b);
    REQUIRE(r.size() == kW);
    sat::Solver s = make_solver(ct.cnf);
    for (int x = 0; x < 16; ++x) {
      for (int y = 0; y < 16; ++y) {
        long long expected = c.oracle(svalue(x), svalue(y));
        std::vector<sat::Lit> as;
        assume_pattern(as, a, x);
        assume_pattern(as, b, y);
        sat::SolveResult ok = s.solve(as);
        REQUIRE(ok.status == sat::Status::Sat);
        CHECK(enc::decode_vec(r, ok.model) == expected);
        // The output must be functionally determined: any other
        // value is contradictory.
        std::vector<sat::Lit> bad = as;
        assume_pattern(bad, r,
               static_cast<long long>(expected ^ 1));
        CHECK(s.solve(bad).status == sat::Status::Unsat);
      }
    }
  }
}

TEST_CASE("four-bit division and remainder are total and match the reference") {
  Circuit ct;
  BitVec a = ct.bb->fresh_vec(kW);
  BitVec b = ct.bb->fresh_vec(kW);
  BitBlaster::DivMod dm = ct.bb->divmod(a, b);
  sat::Solver s = make_solver(ct.cnf);
  for (int x = 0; x < 16; ++x) {
    for (int y = 0; y < 16; ++y) {
      long long q = exec::div_total(svalue(x), svalue(y), kW);
      long long r = exec::mod_total(svalue(x), svalue(y), kW);
      std::vector<sat::Lit> as;
      assume_pattern(as, a, x);
      assume_pattern(as, b, y);
      sat::SolveResult ok = s.solve(as);
      REQUIRE(ok.status == sat::Status::Sat);
      CHECK(enc::decode_vec(dm.quot, ok.model) == q);
      CHECK(enc::decode_vec(dm.rem, ok.model) == r);
      std::vector<sat::Lit> bad_q = as;
      assume_pattern(bad_q, dm.quot, q ^ 1);
      CHECK(s.solve(bad_q).status == sat::Status::Unsat);
      std::vector<sat::Lit> bad_r = as;
      assume_pattern(bad_r, dm.rem, r ^ 1);
      CHECK(s.solve(bad_r).status == sat::Status::Unsat);
    }
  }
}

TEST_CASE("four-bit comparisons agree with signed and unsigned orderings") {
  struct Case {
    const char* name;
    bool (*oracle)(int, int);
    sat::Lit (*build)(BitBlaster&, const BitVec&, const BitVec&);
  };
  const Case cases[] = {
    {"lt_s", [](int x, int y) { return svalue(x) < svalue(y); },
    [](BitBlaster& bb, const BitVec& a, const BitVec& b) {
      return bb.lt_s(a, b);
    }},
    {"le_s", [](int x, int y) { return svalue(x) <= svalue(y); },
    [](BitBlaster& bb, const BitVec& a, const BitVec& b) {
      return bb.le_s(a, b);
    }},
    {"lt_u", [](int x, int y) { return x < y; },
    [](BitBlaster& bb, const BitVec& a, const BitVec& b) {
      return bb.lt_u(a, b);
    }},
    {"eq", [](int x, int y) { return x == y; },
    [](BitBlaster& bb, const BitVec& a, const BitVec& b) {
      return bb.eq_vec(a, b);
    }},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    Circuit ct;
    BitVec a = ct.bb->fresh_vec(kW);
    BitVec b = ct.bb->fresh_vec(kW);
    sat::Lit out = c.build(*ct.bb, a, b);
    sat::Solver s = make_solver(ct.cnf);
    for (int x = 0; x < 16; ++x) {
      for (int y = 0; y < 16; ++y) {
        bool expected = c.oracle(x, y);
        std::vector<sat::Lit> as;
        assume_pattern(as, a, x);
        assume_pattern(as, b, y);
        sat::SolveResult ok = s.solve(as);
        REQUIRE(ok.status == sat::Status::Sat);
        CHECK(enc::lit_value(out, ok.model) == expected);
        std::vector<sat::Lit> bad = as;
        bad.push_back(expected ? -out : out);
        CHECK(s.solve(bad).status == sat::Status::Unsat);
      }
    }
  }
}

TEST_CASE("array select reads any in-range cell and zero out of range") {
  Circuit ct;
  std::vector<BitVec> cells = {ct.bb->fresh_vec(kW), ct.bb->fresh_vec(kW),
                ct.bb->fresh_vec(kW)};
  BitVec idx = ct.bb->fresh_vec(kW);
  BitVec sel = ct.bb->select(cells, idx);
  sat::Solver s = make_solver(ct.cnf);
  const long long stored[3] = {3, -2, 7};
  for (int ix = 0; ix < 16; ++ix) {
    std::vector<sat::Lit> as;
    for (int c = 0; c < 3; ++c) assume_pattern(as, cells[c], stored[c]);
    assume_pattern(as, idx, ix);
    sat::SolveResult ok = s.solve(as);
    REQUIRE(ok.status == sat::Status::Sat);
    long long i = svalue(ix);
    long long expected = (i >= 0 && i < 3) ? stored[i] : 0;
    CHECK(enc::decode_vec(sel, ok.model) == expected);
  }
}

TEST_CASE("array store rewrites exactly the addressed cell") {
  Circuit ct;
  std::vector<BitVec> cells = {ct.bb->fresh_vec(kW), ct.bb->fresh_vec(kW),
                ct.bb->fresh_vec(kW)};
  BitVec idx = ct.bb->fresh_vec(kW);
  BitVec val = ct.bb->fresh_vec(kW);
  std::vector<BitVec> after = ct.bb->store(cells, idx, val);
  REQUIRE(after.size() == 3);
  sat::Solver s = make_solver(ct.cnf);
  const long long stored[3] = {3, -2, 7};
  for (int ix = 0; ix < 16; ++ix) {
    std::vector<sat::Lit> as;
    for (int c = 0; c < 3; ++c) assume_pattern(as, cells[c], stored[c]);
    assume_pattern(as, idx, ix);
    assume_pattern(as, val, 5);
    sat::SolveResult ok = s.solve(as);
    REQUIRE(ok.status == sat::Status::Sat);
    long long i = svalue(ix);
    for (long long c = 0; c < 3; ++c) {
      long long expected = (i == c) ? 5 : stored[c];
      CHECK(enc::decode_vec(after[static_cast<size_t>(c)], ok.model) ==
         expected);
    }
  }
}

TEST_CASE("gates fold constants and trivial shapes without fresh variables") {
  Circuit ct;
  BitBlaster& bb = *ct.bb;
  sat::Lit x = bb.fresh_bit();
  sat::Lit y = bb.fresh_bit();
  int vars_before = ct.cnf.var_count;

  CHECK(bb.mk_and(kTrue, x) == x);
  CHECK(bb.mk_and(x, kTrue) == x);
  CHECK(bb.mk_and(kFalse, x) == kFalse);
  CHECK(bb.mk_and(x, x) == x);
  CHECK(bb.mk_and(x, -x) == kFalse);
  CHECK(bb.mk_or(kFalse, x) == x);
  CHECK(bb.mk_or(kTrue, x) == kTrue);
  CHECK(bb.mk_or(x, -x) == kTrue);
  CHECK(bb.mk_xor(kFalse, x) == x);
  CHECK(bb.mk_xor(kTrue, x) == -x);
  CHECK(bb.mk_xor(x, x) == kFalse);
  CHECK(bb.mk_iff(x, x) == kTrue);
  CHECK(bb.mk_mux(kTrue, x, y) == x);
  CHECK(bb.mk_mux(kFalse, x, y) == y);
  CHECK(bb.mk_mux(x, y, y) == y);
  CHECK(bb.mk_and_many({}) == kTrue);
  CHECK(bb.mk_or_many({}) == kFalse);
  CHECK(bb.mk_and_many({x, kTrue, x}) == x);
  CHECK(bb.mk_or_many({x, -x, y}) == kTrue);

  CHECK(ct.cnf.var_count == vars_before);
  CHECK(ct.cnf.clauses.empty());
}

TEST_CASE("constant vectors fold all the way through arithmetic") {
  Circuit ct;
  BitBlaster& bb = *ct.bb;
  BitVec three = bb.const_vec(3, kW);
  BitVec five = bb.const_vec(5, kW);
  std::vector<bool> no_model;

  CHECK(enc::decode_vec(three, no_model) == 3);
  CHECK(enc::decode_vec(bb.const_vec(-2, kW), no_model) == -2);
  // 3 + 5 wraps to -8 in four signed bits; everything stays constant.
  BitVec sum = bb.add(three, five);
  for (sat::Lit l : sum) CHECK(sat::var_of(l) == kConstVar);
  CHECK(enc::decode_vec(sum, no_model) == exec::wrap(8, kW));
  CHECK(enc::decode_vec(bb.mul(three, five), no_model) ==
     exec::wrap(15, kW));
  CHECK(ct.cnf.clauses.empty());

  // Sign extension of constants stays constant.
  BitVec wide = bb.sign_extend(bb.const_vec(-2, kW), 8);
  CHECK(wide.size() == 8);
  CHECK(enc::decode_vec(wide, no_model) == -2);
}

TEST_CASE("clauses emitted under a guard are disabled when the guard is false") {
  Circuit ct;
  BitBlaster& bb = *ct.bb;
  sat::Lit g = bb.fresh_bit();
  sat::Lit x = bb.fresh_bit();
  bb.push_guard(g);
  bb.fix_true(x);
  bb.pop_guard();
  sat::Solver s = make_solver(ct.cnf);
  // Guard on: x is forced.
  CHECK(s.solve({g, -x}).status == sat::Status::Unsat);
  CHECK(s.solve({g, x}).status == sat::Status::Sat);
  // Guard off: x is free.
  CHECK(s.solve({-g, -x}).status == sat::Status::Sat);
}
