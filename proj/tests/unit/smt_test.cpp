// Copyright 2026 The guardfix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <random>

#include "guardfix/smt/smtlib.hpp"
#include "guardfix/smt/solver.hpp"
#include "support/random_systems.hpp"

namespace guardfix::smt {
namespace {

SolverOptions options(bool fast_path = true) {
  SolverOptions o;
  o.path = default_solver_path();
  o.fast_path = fast_path;
  return o;
}

Formula eq(Term a, Term b) { return relation(RelOp::Eq, std::move(a), std::move(b)); }
Formula gt(Term a, Term b) { return relation(RelOp::Gt, std::move(a), std::move(b)); }
Term c(long long v) { return constant(Integer(v)); }

TEST(Emit, AssignmentCounterpart) {
  ConstraintSystem s;
  s.add(definition_group(), eq(var("r0"), add(var("a0"), var("b0"))));
  std::string script = emit_smtlib(s);
  EXPECT_NE(script.find("(assert (= r0 (+ a0 b0)))"), std::string::npos) << script;
  EXPECT_NE(script.find("(declare-const a0 Int)"), std::string::npos);
  EXPECT_NE(script.find("(get-model)"), std::string::npos);
}

TEST(Emit, EmptySystem) {
  EXPECT_EQ(emit_smtlib(ConstraintSystem{}), "(set-logic QF_NIA)\n(check-sat)\n");
}

TEST(Emit, NegativeConstantsAndQuoting) {
  ConstraintSystem s;
  s.add(GroupTag{GroupKind::Probe, 3}, relation(RelOp::Ne, var("f#1.x@2"), c(-5)));
  std::string script = emit_smtlib(s);
  EXPECT_NE(script.find("(assert (distinct |f#1.x@2| (- 5)))"), std::string::npos) << script;
  EXPECT_NE(script.find("; group: probe#3"), std::string::npos);
}

TEST(Emit, DivisionHelperOnlyWhenNeeded) {
  ConstraintSystem s;
  s.add(definition_group(), eq(var("q0"), add(var("a0"), c(1))));
  EXPECT_EQ(emit_smtlib(s).find("cdiv"), std::string::npos);
  s.add(definition_group(), eq(var("q1"), div(var("a0"), c(2))));
  EXPECT_NE(emit_smtlib(s).find("(define-fun cdiv"), std::string::npos);
}

TEST(Emit, ByteStable) {
  ConstraintSystem s;
  s.add(definition_group(), eq(var("r0"), mul(var("a0"), var("a0"))));
  s.add(GroupTag{GroupKind::Probe, 1},
        disjunction({gt(var("r0"), c(127)), relation(RelOp::Lt, var("r0"), c(-127))}));
  EXPECT_EQ(emit_smtlib(s), emit_smtlib(s));
}

TEST(Emit, RoundTripRandom) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto rs = testing::random_system(rng, 4);
    rs.system.add(GroupTag{GroupKind::Guard, 2}, truth());
    std::string first = emit_smtlib(rs.system);
    ConstraintSystem back = parse_smtlib(first);
    EXPECT_EQ(emit_smtlib(back), first);
    ASSERT_EQ(back.assertions().size(), rs.system.assertions().size());
    for (std::size_t k = 0; k < back.assertions().size(); ++k) {
      EXPECT_EQ(back.assertions()[k].tag, rs.system.assertions()[k].tag);
    }
  }
}

TEST(Parse, RejectsGarbage) {
  EXPECT_THROW(parse_smtlib("(assert (= a"), SmtParseError);
  EXPECT_THROW(parse_smtlib("(assert (bvadd a b))"), SmtParseError);
  EXPECT_THROW(parse_smtlib("; group: nonsense\n(assert true)"), SmtParseError);
}

TEST(System, GroupRemovalKeepsWellFormed) {
  ConstraintSystem s;
  s.add(definition_group(), eq(var("r0"), mul(var("a0"), var("a0"))));
  GroupTag probe{GroupKind::Probe, 1};
  s.add(probe, gt(var("r0"), c(100)));
  EXPECT_TRUE(s.has_group(probe));
  auto removed = s.without_group(probe);
  EXPECT_FALSE(removed.has_group(probe));
  EXPECT_TRUE(removed.well_formed());
  EXPECT_EQ(removed.assertions().size(), 1u);
  EXPECT_EQ(s.assertions().size(), 2u);
}

TEST(GroupTag, ParseRoundTrip) {
  for (GroupTag t : {definition_group(), path_condition_group(), GroupTag{GroupKind::Probe, 7},
                     GroupTag{GroupKind::Guard, 12}}) {
    auto back = GroupTag::parse(t.str());
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, t);
  }
  EXPECT_FALSE(GroupTag::parse("probe#"));
  EXPECT_FALSE(GroupTag::parse("guard#x"));
}

TEST(CheckSat, ConstantAboveIntMaxIsUnsat) {
  SmtSolver solver(options(false));
  ConstraintSystem s;
  s.add(definition_group(), eq(var("x0"), c(100)));
  s.add(GroupTag{GroupKind::Probe, 1}, gt(var("x0"), c(2147483647)));
  EXPECT_TRUE(solver.check_sat(s).is_unsat());
}

TEST(CheckSat, ExactSquareBeyondUintMax) {
  for (bool fast : {false, true}) {
    SmtSolver solver(options(fast));
    ConstraintSystem s;
    s.add(definition_group(), eq(var("x0"), mul(var("a0"), var("a0"))));
    s.add(definition_group(), eq(var("a0"), c(65536)));
    s.add(GroupTag{GroupKind::Probe, 1}, gt(var("x0"), c(4294967295LL)));
    Verdict v = solver.check_sat(s);
    ASSERT_TRUE(v.is_sat()) << v.reason;
    EXPECT_EQ(v.model.at("x0"), Integer(4294967296LL));
  }
}

TEST(CheckSat, UnconstrainedSquareOverflowSubprocess) {
  SmtSolver solver(options());
  ConstraintSystem s;
  s.add(definition_group(), relation(RelOp::Ge, var("data0"), c(0)));
  s.add(definition_group(), relation(RelOp::Le, var("data0"), c(4294967295LL)));
  s.add(definition_group(), eq(var("result0"), mul(var("data0"), var("data0"))));
  s.add(GroupTag{GroupKind::Probe, 1},
        disjunction({gt(var("result0"), c(4294967295LL)), relation(RelOp::Lt, var("result0"), c(0))}));
  Verdict v = solver.check_sat(s);
  ASSERT_TRUE(v.is_sat()) << v.reason;
  EXPECT_GT(v.model.at("data0"), Integer(65535));
  EXPECT_EQ(solver.stats().subprocess_calls, 1u);
  solver.check_sat(s);
  EXPECT_EQ(solver.stats().cache_hits, 1u);
}

TEST(CheckSat, TruncatingDivisionMatchesC) {
  SmtSolver solver(options(false));
  for (auto [a, b] : std::vector<std::pair<int, int>>{{7, 2}, {-7, 2}, {7, -2}, {-7, -2}, {0, 5}}) {
    ConstraintSystem s;
    s.add(definition_group(), eq(var("a0"), c(a)));
    s.add(definition_group(), eq(var("q0"), div(var("a0"), c(b))));
    Verdict v = solver.check_sat(s);
    ASSERT_TRUE(v.is_sat()) << v.reason;
    EXPECT_EQ(v.model.at("q0"), Integer(a / b)) << a << "/" << b;
  }
}

TEST(CheckSat, MissingBinaryIsUnavailable) {
  SolverOptions o;
  o.path = "/nonexistent/solver-binary";
  o.fast_path = false;
  SmtSolver solver(o);
  ConstraintSystem s;
  s.add(definition_group(), gt(var("x0"), c(1)));
  EXPECT_THROW(solver.check_sat(s), SolverUnavailable);
}

TEST(CheckSat, ModelsSatisfyEveryAssertion) {
  SmtSolver solver(options(false));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    auto rs = testing::random_system(rng, 3);
    auto full = testing::with_domain(rs);
    Verdict v = solver.check_sat(full);
    if (!v.is_sat()) continue;
    for (const auto& a : full.assertions()) {
      auto holds = evaluate(a.formula, v.model);
      ASSERT_TRUE(holds && *holds) << emit_smtlib(full);
    }
  }
}

TEST(BruteForce, SignedCharCeiling) {
  ConstraintSystem s;
  s.add(definition_group(), gt(var("x0"), c(127)));
  EXPECT_TRUE(brute_force_check(s, 8).is_unsat());
}

TEST(BruteForce, SmallestSquareAbove127) {
  ConstraintSystem s;
  s.add(definition_group(), gt(mul(var("x0"), var("x0")), c(127)));
  s.add(definition_group(), relation(RelOp::Ge, var("x0"), c(0)));
  Verdict v = brute_force_check(s, 8);
  ASSERT_TRUE(v.is_sat());
  EXPECT_EQ(v.model.at("x0"), Integer(12));
  EXPECT_LE(11 * 11, 127);
}

TEST(BruteForce, LexicographicallySmallest) {
  ConstraintSystem s;
  s.declare("a0");
  s.declare("b0");
  s.add(definition_group(), eq(add(var("a0"), var("b0")), c(3)));
  Verdict v = brute_force_check(s, 4, {"a0", "b0"});
  ASSERT_TRUE(v.is_sat());
  EXPECT_EQ(v.model.at("a0"), Integer(0));
  EXPECT_EQ(v.model.at("b0"), Integer(3));
}

TEST(BruteForce, SpaceTooLarge) {
  ConstraintSystem s;
  for (const char* n : {"a0", "b0", "c0", "d0"}) s.declare(n);
  EXPECT_THROW(brute_force_check(s, 8), SpaceTooLarge);
  EXPECT_THROW(brute_force_check(s, 17), SpaceTooLarge);
}

TEST(QuickDecide, GuardedProbeIsUnsat) {
  ConstraintSystem s;
  s.add(path_condition_group(),
        conjunction({relation(RelOp::Le, var("x0"), c(10)), relation(RelOp::Ge, var("x0"), c(-10))}));
  s.add(definition_group(), eq(var("r0"), mul(var("x0"), c(5))));
  s.add(GroupTag{GroupKind::Probe, 1},
        disjunction({gt(var("r0"), c(127)), relation(RelOp::Lt, var("r0"), c(-127))}));
  auto v = quick_decide(s);
  ASSERT_TRUE(v);
  EXPECT_TRUE(v->is_unsat());
}

TEST(QuickDecide, LeavesOpenQueriesAlone) {
  ConstraintSystem s;
  s.add(definition_group(), eq(var("r0"), mul(var("x0"), var("y0"))));
  s.add(GroupTag{GroupKind::Probe, 1}, gt(var("r0"), c(127)));
  EXPECT_FALSE(quick_decide(s));
}

// Differential oracle: solver verdicts against exhaustive enumeration.
TEST(Differential, ThreeHundredRandomSystems) {
  SmtSolver fast(options(true));
  SmtSolver plain(options(false));
  std::mt19937_64 rng(20261019);
  int sat = 0;
  for (int i = 0; i < 300; ++i) {
    auto rs = testing::random_system(rng, 4);
    auto full = testing::with_domain(rs);
    Verdict oracle = brute_force_check(rs.system, rs.width, rs.unsigned_symbols);
    Verdict a = plain.check_sat(full);
    Verdict b = fast.check_sat(full);
    ASSERT_FALSE(a.is_unknown()) << a.reason << "\n" << emit_smtlib(full);
    EXPECT_EQ(a.kind, oracle.kind) << emit_smtlib(full);
    EXPECT_EQ(b.kind, oracle.kind) << emit_smtlib(full);
    if (oracle.is_sat()) ++sat;
  }
  EXPECT_GT(sat, 30);
  EXPECT_LT(sat, 290);
}

}  // namespace
}  // namespace guardfix::smt
