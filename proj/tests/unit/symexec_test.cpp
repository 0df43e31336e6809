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
#include <atomic>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "guardfix/cfg/cfg.hpp"
#include "guardfix/frontend/parser.hpp"
#include "guardfix/overflow/bound.hpp"
#include "guardfix/overflow/checker.hpp"
#include "guardfix/smt/smtlib.hpp"
#include "guardfix/symexec/encode.hpp"
#include "guardfix/symexec/engine.hpp"
#include "support/interpreter.hpp"

namespace guardfix::symexec {
namespace {

struct Unit {
  std::shared_ptr<const frontend::TranslationUnit> ast;
  cfg::Cfg graph;
  SummaryRegistry summaries = SummaryRegistry::with_defaults();
  EncodeContext ctx;
  PathState state;

  Unit(const std::string& source, const std::string& fn = "f")
      : ast(frontend::parse_translation_unit(source, "t.c")),
        graph(cfg::build_cfg(*ast->find_definition(fn), *ast)) {
    ctx.cfg = &graph;
    ctx.summaries = &summaries;
  }

  const frontend::Stmt& stmt(std::size_t i) const {
    return *ast->find_definition("f")->body->children.at(i);
  }
  EncodedStatement encode(std::size_t i) { return encode_statement(stmt(i), state, ctx); }
};

bool has_assertion(const smt::ConstraintSystem& system, const std::string& text) {
  for (const auto& a : system.assertions()) {
    if (smt::emit_formula(a.formula) == text) return true;
  }
  return false;
}

smt::SmtSolver& solver() {
  static smt::SmtSolver s;
  return s;
}

TEST(Encode, AdditionDefinesResult) {
  Unit u("int f(int varA, int varB) {\n  int result = varA + varB;\n  return result;\n}\n");
  auto enc = u.encode(0);
  ASSERT_TRUE(enc.defined);
  EXPECT_EQ(enc.defined->name(), "result0");
  EXPECT_TRUE(has_assertion(u.state.system(), "(= result0 (+ varA0 varB0))"));
}

TEST(Encode, SelfCopyIsNewVersion) {
  Unit u("void f(int x) {\n  x = x;\n}\n");
  auto enc = u.encode(0);
  ASSERT_TRUE(enc.defined);
  EXPECT_EQ(enc.defined->name(), "x1");
  EXPECT_TRUE(has_assertion(u.state.system(), "(= x1 x0)"));
}

TEST(Encode, ChainedDefinitionsEvaluate) {
  Unit u("void f(int a) {\n  int r = a * a;\n  r = r + 1;\n}\n");
  u.encode(0);
  auto enc = u.encode(1);
  auto system = u.state.system();
  EXPECT_TRUE(has_assertion(system, "(= r0 (* a0 a0))"));
  EXPECT_TRUE(has_assertion(system, "(= r1 (+ r0 1))"));
  // Concrete re-execution under a0 = 3.
  smt::Model model{{"a0", 3}};
  for (const auto& a : system.assertions()) {
    if (a.formula->op == smt::FormulaOp::Rel && a.formula->lhs->op == smt::TermOp::Var &&
        a.formula->rel == smt::RelOp::Eq) {
      auto v = smt::evaluate(a.formula->rhs, model);
      if (v) model[a.formula->lhs->symbol] = *v;
    }
  }
  EXPECT_EQ(model.at(enc.defined->name()), 10);
  auto interp = testing::execute(*u.ast, "f", {3});
  EXPECT_EQ(interp.assignments.back().value, 10);
}

TEST(ValidateBranch, ContradictionIsInfeasible) {
  Unit u("void f(int x) {\n  if (x > 0) {\n  }\n}\n");
  SymVar x = u.state.define("x", frontend::IntKindId::Int);
  u.state.define_equal(x, smt::constant(-1));
  const auto& cond = *u.stmt(0).cond;
  EXPECT_EQ(validate_branch(u.state, cond, true, u.ctx, solver()), Feasibility::Infeasible);
}

TEST(ValidateBranch, UnconstrainedInputBothArms) {
  Unit u("void f(int y) {\n  if (y > 0) {\n  }\n}\n");
  const auto& cond = *u.stmt(0).cond;
  PathState copy = u.state;
  EXPECT_EQ(validate_branch(u.state, cond, true, u.ctx, solver()), Feasibility::Feasible);
  u.state = copy;
  EXPECT_EQ(validate_branch(u.state, cond, false, u.ctx, solver()), Feasibility::Feasible);
}

std::string straight_line(std::mt19937_64& rng) {
  static const char* ops[] = {" + ", " - ", " * "};
  std::vector<std::string> vars = {"a", "b"};
  std::string body;
  int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    std::string t = "t" + std::to_string(i);
    std::string lhs = vars[rng() % vars.size()];
    std::string rhs = rng() % 3 == 0 ? std::to_string(rng() % 7 + 1) : vars[rng() % vars.size()];
    body += "  int " + t + " = " + lhs + ops[rng() % 3] + rhs + ";\n";
    vars.push_back(t);
  }
  const char* rel[] = {" > ", " < ", " == "};
  long k = static_cast<long>(rng() % 60000) - 30000;
  if (rng() % 2) k = static_cast<long>(rng() % 40) - 20;
  body += "  if (" + vars.back() + rel[rng() % 3] + std::to_string(k) + ") {\n    return 1;\n  }\n";
  return "int f(char a, char b) {\n" + body + "  return 0;\n}\n";
}

TEST(ValidateBranch, RandomProgramsMatchEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::string src = straight_line(rng);
    Unit u(src);
    const auto& children = u.ast->find_definition("f")->body->children;
    std::size_t if_index = children.size() - 2;
    for (std::size_t i = 0; i < if_index; ++i) u.encode(i);
    bool can_take = false, can_skip = false;
    for (int a = -128; a <= 127 && !(can_take && can_skip); ++a) {
      for (int b = -128; b <= 127; ++b) {
        auto r = testing::execute(*u.ast, "f", {a, b});
        (*r.return_value == 1 ? can_take : can_skip) = true;
        if (can_take && can_skip) break;
      }
    }
    const auto& cond = *children[if_index]->cond;
    PathState base = u.state;
    EXPECT_EQ(validate_branch(u.state, cond, true, u.ctx, solver()) == Feasibility::Feasible, can_take)
        << src;
    u.state = base;
    EXPECT_EQ(validate_branch(u.state, cond, false, u.ctx, solver()) == Feasibility::Feasible, can_skip)
        << src;
  }
}

TEST(Slice, UnrelatedConstraintDropped) {
  PathState s;
  SymVar r = s.define("r", frontend::IntKindId::Int);
  s.define_equal(r, smt::add(smt::var("a"), smt::var("b")));
  SymVar c = s.define("c", frontend::IntKindId::Int);
  s.define_equal(c, smt::mul(smt::var("d"), smt::var("d")));
  auto slice = slice_for(s, r);
  ASSERT_EQ(slice.assertions().size(), 1u);
  EXPECT_EQ(smt::emit_formula(slice.assertions()[0].formula), "(= r0 (+ a b))");
}

TEST(Slice, ChainedDependenciesIncluded) {
  PathState s;
  SymVar a = s.define("a", frontend::IntKindId::Int);
  s.define_equal(a, smt::mul(smt::var("e"), smt::constant(2)));
  SymVar r = s.define("r", frontend::IntKindId::Int);
  s.define_equal(r, smt::add(a.term(), smt::var("b")));
  auto slice = slice_for(s, r);
  EXPECT_EQ(slice.assertions().size(), 2u);
}

TEST(Slice, UnknownVariableThrows) {
  PathState s;
  SymVar ghost{"ghost", 3};
  EXPECT_THROW(slice_for(s, ghost), UnknownSymVar);
}

TEST(Slice, RandomDagsAgreeWithFullSystem) {
  std::mt19937_64 rng(5);
  smt::SmtSolver& z3 = solver();
  for (int trial = 0; trial < 200; ++trial) {
    PathState s;
    std::vector<SymVar> vars;
    int inputs = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < inputs; ++i) {
      vars.push_back(s.fresh("in" + std::string(1, static_cast<char>('a' + i)), frontend::IntKindId::Char));
    }
    int defs = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < defs; ++i) {
      const SymVar& x = vars[rng() % vars.size()];
      const SymVar& y = vars[rng() % vars.size()];
      smt::Term t = rng() % 2 ? smt::mul(x.term(), y.term()) : smt::add(x.term(), y.term());
      SymVar v = s.define("v" + std::string(1, static_cast<char>('a' + i)), frontend::IntKindId::Int);
      s.define_equal(v, t);
      vars.push_back(v);
      if (rng() % 3 == 0) {
        s.add(smt::path_condition_group(),
              smt::relation(smt::RelOp::Lt, v.term(), smt::constant(static_cast<long>(rng() % 200) - 100)));
      }
    }
    const SymVar& target = vars[inputs + rng() % defs];
    auto probe = smt::relation(smt::RelOp::Gt, target.term(),
                               smt::constant(static_cast<long>(rng() % 20000)));
    auto sliced = slice_for(s, target);
    sliced.add({smt::GroupKind::Probe, 1}, probe);
    auto full = s.system();
    full.add({smt::GroupKind::Probe, 1}, probe);
    auto a = z3.check_sat(sliced).kind;
    auto b = z3.check_sat(full).kind;
    ASSERT_NE(a, smt::Verdict::Kind::Unknown);
    EXPECT_EQ(a, b) << smt::emit_smtlib(full);
  }
}

TEST(Summary, Rand32IsFreshInt) {
  Unit u("void f(void) {\n  int x = RAND32();\n}\n");
  auto enc = u.encode(0);
  ASSERT_TRUE(enc.defined);
  EXPECT_EQ(enc.defined->kind, frontend::IntKind(frontend::IntKindId::Int));
  auto slice = slice_for(u.state, *enc.defined);
  ASSERT_EQ(slice.assertions().size(), 1u);
  EXPECT_EQ(smt::emit_formula(slice.assertions()[0].formula), smt::emit_formula(domain_of(*enc.defined)));
}

TEST(Summary, ConstantReturn) {
  Unit u("void f(void) {\n  int y = five();\n}\n");
  u.summaries.add({"five", {}, frontend::IntKindId::Int, SummaryEffect::ConstantReturn, 5, std::nullopt});
  u.encode(0);
  EXPECT_TRUE(has_assertion(u.state.system(), "(= $ret@0 5)"));
}

TEST(Summary, MemcpyLeavesStoreUntouched) {
  Unit u("void f(int *dst, int *src, int n) {\n  memcpy(dst, src, n);\n}\n");
  auto before_constraints = u.state.constraints().size();
  auto before_history = u.state.history().size();
  u.encode(0);
  EXPECT_EQ(u.state.constraints().size(), before_constraints);
  EXPECT_EQ(u.state.history().size(), before_history);
}

TEST(Summary, MissingSummaryAbandons) {
  Unit u("void f(void) {\n  int y = mystery();\n}\n");
  EXPECT_THROW(u.encode(0), MissingSummary);
}

class CountingChecker : public Checker {
 public:
  std::string id() const override { return "COUNT"; }
  std::optional<BugReport> on_site(const SiteContext& site, std::vector<Diagnostic>&) const override {
    std::lock_guard<std::mutex> lock(mutex_);
    ++counts_[site.stmt.span.begin.line];
    return std::nullopt;
  }
  mutable std::mutex mutex_;
  mutable std::map<std::uint32_t, int> counts_;
};

TEST(Engine, OneNotificationPerSite) {
  Engine engine;
  auto counter = std::make_shared<CountingChecker>();
  engine.register_checker(counter);
  engine.analyze(frontend::parse_translation_unit("int f(int a) {\n  int r = a * a;\n  return r;\n}\n", "t.c"));
  EXPECT_EQ(counter->counts_[2], 1);
}

TEST(Engine, ZeroCheckersZeroReports) {
  Engine engine;
  auto result = engine.analyze(frontend::parse_translation_unit("int f(int a) {\n  int r = a * a;\n  return r;\n}\n", "t.c"));
  EXPECT_TRUE(result.reports.empty());
  EXPECT_GE(result.stats.paths_completed, 1u);
}

TEST(Engine, TwoCheckerCopiesDuplicateReports) {
  auto unit = frontend::parse_translation_unit("int f(int a) {\n  int r = a * a;\n  int s = a + 1;\n  return r;\n}\n", "t.c");
  Engine one;
  one.register_checker(std::make_shared<overflow::OverflowChecker>());
  auto single = one.analyze(unit).reports;
  Engine two;
  two.register_checker(std::make_shared<overflow::OverflowChecker>("/usr/include/limits.h", "IOF"));
  two.register_checker(std::make_shared<overflow::OverflowChecker>("/usr/include/limits.h", "IOF2"));
  auto doubled = two.analyze(unit).reports;
  ASSERT_EQ(doubled.size(), 2 * single.size());
  std::multiset<std::uint32_t> a, b;
  std::set<std::string> ids;
  for (const auto& r : single) a.insert(r.line), a.insert(r.line);
  for (const auto& r : doubled) b.insert(r.line), ids.insert(r.checker_id);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ids, (std::set<std::string>{"IOF", "IOF2"}));
}

TEST(Engine, SsaSoundOnEightBitPaths) {
  // Every path dump's definitions are reproduced by concrete execution of a model.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::string src = testing::random_small_program(rng, 2, 4);
    EngineOptions options;
    options.dump_paths = true;
    Engine engine(options);
    auto unit = frontend::parse_translation_unit(src, "t.c");
    auto result = engine.analyze(unit);
    for (const auto& dump : result.path_dumps) {
      auto system = smt::parse_smtlib(dump);
      auto verdict = solver().check_sat(system);
      ASSERT_EQ(verdict.kind, smt::Verdict::Kind::Sat) << dump;
      auto run = testing::execute(*unit, "f", {verdict.model.count("a0") ? verdict.model.at("a0") : Integer(0),
                                               verdict.model.count("b0") ? verdict.model.at("b0") : Integer(0)});
      std::map<std::string, Integer> last;
      for (const auto& e : run.assignments) last[e.variable] = e.value;
      for (const auto& [name, value] : last) {
        // The final SSA version of each variable on this path holds the concrete value.
        std::optional<std::string> latest;
        for (std::uint32_t idx = 0; verdict.model.count(smt_name(name, idx)); ++idx) {
          latest = smt_name(name, idx);
        }
        if (!latest) continue;
        EXPECT_EQ(verdict.model.at(*latest), value) << src << dump;
      }
    }
  }
}

}  // namespace
}  // namespace guardfix::symexec
