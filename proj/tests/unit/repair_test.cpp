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
#include <random>
#include <regex>

#include <gtest/gtest.h>

#include "guardfix/frontend/parser.hpp"
#include "guardfix/overflow/bound.hpp"
#include "guardfix/overflow/checker.hpp"
#include "guardfix/repair/repair.hpp"
#include "guardfix/smt/smtlib.hpp"
#include "guardfix/support/text.hpp"
#include "support/interpreter.hpp"

namespace guardfix::repair {
namespace {

smt::SmtSolver& solver() {
  static smt::SmtSolver s;
  return s;
}

struct Analyzed {
  std::shared_ptr<const frontend::TranslationUnit> unit;
  symexec::AnalysisResult result;
};

Analyzed analyze(const std::string& src, const AnalysisConfig& config = {}, const std::string& name = "t.c") {
  Analyzed a;
  a.unit = frontend::parse_translation_unit(src, name);
  a.result = analyze_unit(a.unit, config);
  return a;
}

std::string motivating() { return read_file(std::string(GUARDFIX_FIXTURE_DIR) + "/motivating.c"); }

TEST(Cluster, MotivatingExample) {
  auto a = analyze(motivating(), {}, "motivating.c");
  ASSERT_EQ(a.result.reports.size(), 1u);
  const auto& report = a.result.reports[0];
  BugCluster c = cluster_bug(report, *a.unit);
  EXPECT_EQ(c.detecting, report.variable);
  EXPECT_EQ(c.stmt->span.begin.line, 8u);
  EXPECT_NE(std::find(c.dependencies.begin(), c.dependencies.end(), "data1"), c.dependencies.end());
  // Dependencies are the slice's symbols minus the detecting one.
  std::set<std::string> expected(report.slice.declarations().begin(), report.slice.declarations().end());
  expected.erase(report.variable);
  EXPECT_EQ(std::set<std::string>(c.dependencies.begin(), c.dependencies.end()), expected);
  EXPECT_EQ(select_constraint_vars(c), std::vector<std::string>{report.variable});
}

TEST(Cluster, StaleSpanRejected) {
  auto a = analyze(motivating(), {}, "motivating.c");
  std::string edited = motivating();
  edited.insert(0, "\n");
  auto moved = frontend::parse_translation_unit(edited, "motivating.c");
  EXPECT_THROW(cluster_bug(a.result.reports[0], *moved), StaleState);
}

TEST(Cluster, TwoOperandDependencies) {
  auto a = analyze("int f(int a, int b) {\n  int r = a + b;\n  return r;\n}\n");
  ASSERT_EQ(a.result.reports.size(), 1u);
  BugCluster c = cluster_bug(a.result.reports[0], *a.unit);
  EXPECT_EQ(select_constraint_vars(c), std::vector<std::string>{"r0"});
  std::set<std::string> deps(c.dependencies.begin(), c.dependencies.end());
  EXPECT_TRUE(deps.count("a0") && deps.count("b0"));
}

TEST(Cluster, SelectionDeterministic) {
  std::string src = "int f(int a, int b) {\n  int r = a * b;\n  int s = r + a;\n  return s;\n}\n";
  auto first = analyze(src);
  auto second = analyze(src);
  ASSERT_EQ(first.result.reports.size(), second.result.reports.size());
  for (std::size_t i = 0; i < first.result.reports.size(); ++i) {
    EXPECT_EQ(select_constraint_vars(cluster_bug(first.result.reports[i], *first.unit)),
              select_constraint_vars(cluster_bug(second.result.reports[i], *second.unit)));
  }
}

TEST(Reconstrain, IntMaxGroup) {
  BugCluster c;
  c.bound = overflow::bound_for_macro("INT_MAX");
  GuardGroup g = reconstrain(c, {"result0"});
  ASSERT_EQ(g.formulas.size(), 2u);
  EXPECT_EQ(smt::emit_formula(g.formulas[0]), "(<= result0 2147483647)");
  EXPECT_EQ(smt::emit_formula(g.formulas[1]), "(>= result0 (- 2147483647))");
  EXPECT_EQ(g.tag.kind, smt::GroupKind::Guard);
}

TEST(Reconstrain, CharGroupComplementsProbe) {
  BugCluster c;
  c.bound = overflow::bound_for_macro("CHAR_MAX");
  GuardGroup g = reconstrain(c, {"v0"});
  EXPECT_EQ(smt::emit_formula(g.formulas[0]), "(<= v0 127)");
  EXPECT_EQ(smt::emit_formula(g.formulas[1]), "(>= v0 (- 127))");
  for (const char* macro : {"CHAR_MAX", "SHRT_MAX", "INT_MAX", "UINT_MAX", "LLONG_MAX"}) {
    c.bound = overflow::bound_for_macro(macro);
    smt::ConstraintSystem s;
    for (const auto& f : reconstrain(c, {"v0"}).formulas) s.add({smt::GroupKind::Guard, 1}, f);
    s.add({smt::GroupKind::Probe, 1}, overflow::probe_formula("v0", c.bound));
    EXPECT_EQ(solver().check_sat(s).kind, smt::Verdict::Kind::Unsat) << macro;
  }
}

TEST(NewSystem, MotivatingValidates) {
  auto a = analyze(motivating(), {}, "motivating.c");
  BugCluster c = cluster_bug(a.result.reports[0], *a.unit);
  auto r = build_and_check_new_system(c, reconstrain(c, select_constraint_vars(c)), solver());
  EXPECT_EQ(r.with_probe, smt::Verdict::Kind::Unsat);
  EXPECT_EQ(r.guard_only, smt::Verdict::Kind::Sat);
  EXPECT_EQ(r.outcome, ConstraintCheck::Validated);
}

TEST(NewSystem, ForcedOverflowFails) {
  auto a = analyze("int f(void) {\n  int x = 2147483647;\n  int r = x + 1;\n  return r;\n}\n");
  ASSERT_EQ(a.result.reports.size(), 1u);
  BugCluster c = cluster_bug(a.result.reports[0], *a.unit);
  auto r = build_and_check_new_system(c, reconstrain(c, select_constraint_vars(c)), solver());
  EXPECT_EQ(r.guard_only, smt::Verdict::Kind::Unsat);
  EXPECT_EQ(r.outcome, ConstraintCheck::Failed);
  auto cand = generate_candidate(a.result.reports[0], *a.unit, default_pattern_pool(), solver());
  EXPECT_EQ(cand.status, ValidationStatus::Failed);
  EXPECT_TRUE(cand.diff.empty());
}

TEST(BugType, ParsesSuffix) {
  EXPECT_EQ(determine_bug_type("0123456789ab-1-IOF", {"IOF"}), "IOF");
  EXPECT_THROW(determine_bug_type("garbage", {"IOF"}), UnknownChecker);
  EXPECT_THROW(determine_bug_type("0123-1-XYZ", {"IOF"}), UnknownChecker);
  EXPECT_THROW(determine_bug_type("0123-1-", {"IOF"}), UnknownChecker);
}

TEST(BugType, RoundTripsReports) {
  auto a = analyze("int f(int a, int b) {\n  int r = a * b;\n  int s = a + 1;\n  int t = -a;\n  return r;\n}\n");
  ASSERT_EQ(a.result.reports.size(), 3u);
  for (const auto& r : a.result.reports) EXPECT_EQ(determine_bug_type(r.problem_id, {"IOF"}), r.checker_id);
}

const frontend::Stmt& first_stmt(const frontend::TranslationUnit& unit) {
  return *unit.find_definition("f")->body->children.at(0);
}

SiteShape shape_of(const std::string& body, std::shared_ptr<const frontend::TranslationUnit>& keep) {
  keep = frontend::parse_translation_unit("void f(int a, int b, int data, int r) {\n  " + body + "\n}\n", "t.c");
  return site_shape(first_stmt(*keep), *keep);
}

TEST(SelectPattern, PaperShapes) {
  std::shared_ptr<const frontend::TranslationUnit> keep;
  const auto& pool = default_pattern_pool();
  EXPECT_EQ(select_pattern(shape_of("r = data * data;", keep), pool).id, "square");
  EXPECT_EQ(select_pattern(shape_of("r = a + b;", keep), pool).id, "add-variable-constant");
  EXPECT_EQ(select_pattern(shape_of("r = a * 5;", keep), pool).id, "multiply-variable-constant");
  EXPECT_EQ(select_pattern(shape_of("r = a * b;", keep), pool).id, "multiply-variable-constant");
  EXPECT_EQ(select_pattern(shape_of("r = -a;", keep), pool).id, "add-variable-constant");
  EXPECT_EQ(select_pattern(shape_of("r += a;", keep), pool).id, "add-variable-constant");
}

TEST(SelectPattern, TieGoesToPoolOrder) {
  PatternPool pool = default_pattern_pool();
  RepairPattern twin = pool.patterns[0];
  twin.id = "twin";
  pool.patterns.insert(pool.patterns.begin() + 1, twin);
  std::shared_ptr<const frontend::TranslationUnit> keep;
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(select_pattern(shape_of("r = a + 3;", keep), pool).id, "add-variable-constant");
  }
  pool.patterns.erase(pool.patterns.begin());
  EXPECT_EQ(select_pattern(shape_of("r = a + 3;", keep), pool).id, "twin");
}

TEST(SelectPattern, NoApplicable) {
  PatternPool pool = default_pattern_pool();
  pool.patterns.erase(pool.patterns.begin() + 1, pool.patterns.end());
  std::shared_ptr<const frontend::TranslationUnit> keep;
  EXPECT_THROW(select_pattern(shape_of("r = a * b;", keep), pool), NoApplicablePattern);
}

TEST(Instantiate, MotivatingGuard) {
  auto a = analyze(motivating(), {}, "motivating.c");
  const auto& report = a.result.reports[0];
  SiteShape shape = site_shape(*cluster_bug(report, *a.unit).stmt, *a.unit);
  const auto& pool = default_pattern_pool();
  const auto& pattern = select_pattern(shape, pool);
  auto inst = instantiate_pattern(pattern, shape, report.bound, {"motivating.c", report.problem_id, 8}, pool);
  EXPECT_EQ(inst.bindings.at("value4"), "65535");
  EXPECT_EQ(inst.bindings.at("value5"), "0");
  EXPECT_EQ(inst.code.substr(0, inst.code.find('\n')), "if (data <= 65535 && data >= 0) {");
  EXPECT_NE(inst.code.find("    result = data * data;\n"), std::string::npos);
  EXPECT_NE(inst.code.find("guardfix_overflow_handler(\"motivating.c\", \"" + report.problem_id + "\", 8);"),
            std::string::npos);
  // Handler variants differ only in the else arm.
  auto v1 = instantiate_pattern(pattern, shape, report.bound, {"motivating.c", report.problem_id, 8}, pool,
                                HandlerVariant::V1);
  auto else_at = inst.code.find("} else {");
  EXPECT_EQ(inst.code.substr(0, else_at), v1.code.substr(0, else_at));
  EXPECT_NE(inst.code.substr(else_at), v1.code.substr(else_at));
  EXPECT_NE(v1.code.find("fprintf(stderr"), std::string::npos);
}

TEST(Instantiate, IntMaxSquareRoot) {
  std::shared_ptr<const frontend::TranslationUnit> keep;
  SiteShape shape = shape_of("int result = data * data;", keep);
  const auto& pool = default_pattern_pool();
  auto inst = instantiate_pattern(select_pattern(shape, pool), shape, overflow::bound_for_macro("INT_MAX"),
                                  {"t.c", "x-1-IOF", 2}, pool);
  EXPECT_EQ(inst.bindings.at("value4"), "46340");
  EXPECT_EQ(inst.bindings.at("value5"), "-46340");
  EXPECT_EQ(inst.bindings.at("buggyStm10"), "result = data * data;");
}

TEST(Instantiate, UnboundPlaceholderThrows) {
  PatternPool pool = default_pattern_pool();
  pool.patterns[2].templates["range"] = "if ({s1} <= {bogus}) {\n    {buggyStm10}\n}";
  std::shared_ptr<const frontend::TranslationUnit> keep;
  SiteShape shape = shape_of("r = data * data;", keep);
  EXPECT_THROW(instantiate_pattern(pool.patterns[2], shape, overflow::bound_for_macro("INT_MAX"), {"t.c", "x-1-IOF", 2},
                                   pool),
               UnboundPlaceholder);
}

TEST(Instantiate, EveryShapeParsesWithoutPlaceholders) {
  const auto& pool = default_pattern_pool();
  std::regex leftover(R"(\{[A-Za-z_][A-Za-z0-9_]*\})");
  for (const char* body : {"r = a + b;", "r = a - b;", "r = a * b;", "r = a / b;", "r = a + 7;", "r = 7 - a;",
                           "r = a * -3;", "r = a / 3;", "r = -a;", "r += b;", "r -= 2;", "r *= 4;", "r++;",
                           "r--;", "int q = data * data;", "r = (a + b) * 2;"}) {
    std::shared_ptr<const frontend::TranslationUnit> keep;
    SiteShape shape = shape_of(body, keep);
    for (const char* macro : {"CHAR_MAX", "INT_MAX", "UINT_MAX"}) {
      auto inst = instantiate_pattern(select_pattern(shape, pool), shape, overflow::bound_for_macro(macro),
                                      {"t.c", "x-1-IOF", 2}, pool);
      EXPECT_FALSE(std::regex_search(inst.code, leftover)) << inst.code;
      std::string program = "void guardfix_overflow_handler(const char *f, const char *i, int l);\n"
                            "void f(int a, int b, int data, int r) {\n" +
                            (shape.declaration ? *shape.declaration + "\n" : std::string()) + inst.code + "\n}\n";
      EXPECT_NO_THROW(frontend::parse_translation_unit(program, "t.c")) << program;
    }
  }
}

TEST(Diff, RoundTripAndReverse) {
  std::string before = "a\nb\nc\nd\ne\nf\ng\nh\ni\nj\nk\n";
  std::string after = "a\nB\nc\nd\ne\nf\ng\nh\nI\ni2\nj\nk";
  std::string d = unified_diff(before, after, "a/x", "b/x");
  EXPECT_EQ(apply_unified_diff(before, d), after);
  EXPECT_EQ(apply_unified_diff(after, d, true), before);
  EXPECT_EQ(unified_diff(before, before, "a", "b"), "");
  EXPECT_THROW(apply_unified_diff("zzz\n", d), DiffMismatch);
}

TEST(Diff, RandomEditsRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::string before, after;
    int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      std::string line = std::to_string(rng() % 5) + "\n";
      before += line;
      int r = static_cast<int>(rng() % 6);
      if (r == 0) continue;
      if (r == 1) after += "new" + std::to_string(rng() % 3) + "\n";
      after += line;
    }
    if (rng() % 2) after += "tail";
    std::string d = unified_diff(before, after, "a", "b", static_cast<int>(rng() % 4));
    ASSERT_EQ(apply_unified_diff(before, d), after) << d;
    ASSERT_EQ(apply_unified_diff(after, d, true), before) << d;
  }
}

TEST(Insert, MotivatingPatchAndRevalidate) {
  std::string src = motivating();
  auto a = analyze(src, {}, "motivating.c");
  auto cand = generate_candidate(a.result.reports[0], *a.unit, default_pattern_pool(), solver());
  ASSERT_EQ(cand.status, ValidationStatus::ConstraintValidated) << cand.failure_reason;
  auto patch = insert_repair(src, cand);
  EXPECT_EQ(patch.diff, cand.diff);
  EXPECT_EQ(apply_unified_diff(src, patch.diff), patch.text);
  EXPECT_EQ(apply_unified_diff(patch.text, patch.diff, true), src);
  EXPECT_NE(patch.text.find("    unsigned int result;\n    if (data <= 65535 && data >= 0) {\n"
                            "        result = data * data;\n    } else {\n"),
            std::string::npos)
      << patch.text;
  auto template_lines = static_cast<long>(std::count(cand.replacement.begin(), cand.replacement.end(), '\n'));
  auto injection_lines = static_cast<long>(std::count(cand.injection.begin(), cand.injection.end(), '\n'));
  EXPECT_LE(diff_line_delta(patch.diff), template_lines + injection_lines);
  EXPECT_NO_THROW(frontend::parse_translation_unit(patch.text, "motivating.c"));

  auto rv = revalidate(patch.text, "motivating.c", patch, a.result.reports, {});
  EXPECT_TRUE(rv.revalidated);
  EXPECT_TRUE(rv.remaining.empty());
  EXPECT_TRUE(rv.introduced.empty());
  EXPECT_TRUE(rv.analysis.reports.empty());
  // Idempotence: nothing left to repair.
  EXPECT_TRUE(analyze(patch.text, {}, "motivating.c").result.reports.empty());
}

TEST(Insert, CorruptedGuardFailsRevalidation) {
  std::string src = motivating();
  auto a = analyze(src, {}, "motivating.c");
  auto cand = generate_candidate(a.result.reports[0], *a.unit, default_pattern_pool(), solver());
  auto at = cand.replacement.find("65535");
  ASSERT_NE(at, std::string::npos);
  cand.replacement.replace(at, 5, "65536");
  auto patch = insert_repair(src, cand);
  auto rv = revalidate(patch.text, "motivating.c", patch, a.result.reports, {});
  EXPECT_FALSE(rv.revalidated);
  ASSERT_EQ(rv.remaining.size(), 1u);
  EXPECT_EQ(rv.remaining[0].witness.at("data1"), 65536);
}

TEST(Insert, SpanDriftDetected) {
  std::string src = motivating();
  auto a = analyze(src, {}, "motivating.c");
  auto cand = generate_candidate(a.result.reports[0], *a.unit, default_pattern_pool(), solver());
  std::string edited = src;
  edited.insert(cand.begin_offset, "  ");
  EXPECT_THROW(insert_repair(edited, cand), SpanDrift);
}

TEST(Insert, SingleStatementBodyGetsBraces) {
  std::string src = "int f(int a) {\n  int r = 0;\n  if (a > 0)\n    r = a * a;\n  return r;\n}\n";
  auto a = analyze(src);
  ASSERT_EQ(a.result.reports.size(), 1u);
  auto cand = generate_candidate(a.result.reports[0], *a.unit, default_pattern_pool(), solver());
  ASSERT_EQ(cand.status, ValidationStatus::ConstraintValidated) << cand.failure_reason;
  auto patch = insert_repair(src, cand);
  EXPECT_TRUE(revalidate(patch.text, "t.c", patch, a.result.reports, {}).revalidated) << patch.text;
}

TEST(Insert, ForStepCannotBeWrapped) {
  std::string src = "int f(int n) {\n  int i;\n  for (i = 0; i < n; i = i + 1) {\n  }\n  return i;\n}\n";
  auto a = analyze(src);
  for (const auto& r : a.result.reports) {
    auto cand = generate_candidate(r, *a.unit, default_pattern_pool(), solver());
    if (r.line == 3) EXPECT_EQ(cand.status, ValidationStatus::Failed);
  }
}

/// Repairs every report of `src`, returning the patched text and the patch.
struct Repaired {
  Analyzed original;
  std::vector<RepairCandidate> candidates;
  PatchResult patch;
};

Repaired repair_all(const std::string& src, const AnalysisConfig& config) {
  Repaired r;
  r.original = analyze(src, config);
  std::vector<const RepairCandidate*> ok;
  for (const auto& rep : r.original.result.reports) {
    r.candidates.push_back(generate_candidate(rep, *r.original.unit, default_pattern_pool(), solver()));
  }
  for (const auto& c : r.candidates) {
    if (c.status == ValidationStatus::ConstraintValidated) ok.push_back(&c);
  }
  r.patch = insert_repairs(src, ok);
  return r;
}

TEST(Repair, EightBitSoundAndBehaviorPreserving) {
  std::mt19937_64 rng(29);
  AnalysisConfig config;
  config.fixed_bound = overflow::bound_for_macro("CHAR_MAX");
  int repaired_programs = 0;
  int failed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::string src = testing::random_small_program(rng, 2, 5);
    auto r = repair_all(src, config);
    if (r.original.result.reports.empty()) continue;
    // A failed candidate is one whose reported path overflows for every input.
    std::set<std::string> unrepaired;
    for (const auto& c : r.candidates) {
      if (c.status == ValidationStatus::Failed) {
        EXPECT_EQ(c.failure_reason, "guarded path is infeasible (unsat)");
        unrepaired.insert(c.statement);
        ++failed;
      }
    }
    ++repaired_programs;
    auto rv = revalidate(r.patch.text, "t.c", r.patch, r.original.result.reports, config);
    ASSERT_TRUE(rv.revalidated) << r.patch.text;
    EXPECT_TRUE(rv.introduced.empty()) << r.patch.text;
    for (const auto& rep : rv.analysis.reports) EXPECT_TRUE(unrepaired.count(rep.statement)) << r.patch.text;

    auto patched = frontend::parse_translation_unit(r.patch.text, "t.c");
    std::set<std::uint32_t> repaired_lines(r.patch.statement_lines.begin(), r.patch.statement_lines.end());
    std::set<std::uint32_t> original_lines;
    for (const auto& c : r.candidates) {
      if (c.status != ValidationStatus::Failed) original_lines.insert(c.line);
    }
    for (int a = -128; a <= 127; ++a) {
      for (int b = -128; b <= 127; ++b) {
        auto before = testing::execute(*r.original.unit, "f", {a, b});
        auto after = testing::execute(*patched, "f", {a, b});
        for (const auto& e : after.assignments) {
          if (repaired_lines.count(e.stmt->span.begin.line)) {
            ASSERT_TRUE(e.value <= 127 && e.value >= -127) << r.patch.text << a << "," << b;
          }
        }
        bool in_range = true;
        for (const auto& e : before.assignments) {
          if (original_lines.count(e.stmt->span.begin.line) && (e.value > 127 || e.value < -127)) in_range = false;
        }
        if (!in_range) {
          EXPECT_EQ(after.outcome, testing::Outcome::Handler);
          continue;
        }
        ASSERT_EQ(before.outcome, after.outcome) << r.patch.text << a << "," << b;
        ASSERT_EQ(before.return_value, after.return_value) << r.patch.text << a << "," << b;
        ASSERT_EQ(before.output, after.output);
      }
    }
  }
  EXPECT_GT(repaired_programs, 10);
  EXPECT_LT(failed, repaired_programs);
}

TEST(CandidateJson, RoundTrip) {
  auto a = analyze(motivating(), {}, "motivating.c");
  auto cand = generate_candidate(a.result.reports[0], *a.unit, default_pattern_pool(), solver());
  auto back = candidate_from_json(to_json(cand));
  EXPECT_EQ(to_json(back).dump(), to_json(cand).dump());
}

}  // namespace
}  // namespace guardfix::repair
