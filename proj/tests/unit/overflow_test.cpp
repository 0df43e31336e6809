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
#include <fstream>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "guardfix/frontend/parser.hpp"
#include "guardfix/overflow/bound.hpp"
#include "guardfix/overflow/checker.hpp"
#include "guardfix/overflow/preconditions.hpp"
#include "guardfix/support/text.hpp"
#include "guardfix/symexec/engine.hpp"
#include "support/interpreter.hpp"

namespace guardfix::overflow {
namespace {

constexpr const char* kNoLimits = "/nonexistent/limits.h";

std::shared_ptr<const frontend::TranslationUnit> parse(const std::string& src) {
  return frontend::parse_translation_unit(src, "t.c");
}

symexec::AnalysisResult analyze(const std::shared_ptr<const frontend::TranslationUnit>& unit,
                                std::optional<BoundInfo> bound = std::nullopt) {
  symexec::Engine engine;
  auto checker = std::make_shared<OverflowChecker>();
  if (bound) checker->fix_bound(*bound);
  engine.register_checker(checker);
  return engine.analyze(unit);
}

TEST(Bound, CharMaxComparison) {
  auto unit = parse("void f(char c) {\n  if (c < CHAR_MAX) {\n    c = c + 1;\n  }\n}\n");
  BoundInfo b = discover_upper_bound(*unit, kNoLimits);
  EXPECT_EQ(b.macro, "CHAR_MAX");
  EXPECT_EQ(b.upper_value, 127);
  EXPECT_EQ(b.lower_value, -127);
  EXPECT_EQ(b.origin, BoundOrigin::ProgramUsage);
}

TEST(Bound, DefaultIsIntMax) {
  auto unit = parse("int f(int a) {\n  return a + 1;\n}\n");
  BoundInfo b = discover_upper_bound(*unit, kNoLimits);
  EXPECT_EQ(b.macro, "INT_MAX");
  EXPECT_EQ(b.upper_value, 2147483647);
  EXPECT_EQ(b.origin, BoundOrigin::Default);
}

TEST(Bound, UintMaxHasZeroLower) {
  auto unit = parse("unsigned int f(unsigned int a) {\n  unsigned int m = UINT_MAX;\n  return a;\n}\n");
  BoundInfo b = discover_upper_bound(*unit, kNoLimits);
  EXPECT_EQ(b.upper_value, Integer("4294967295"));
  EXPECT_EQ(b.lower_value, 0);
}

TEST(Bound, FirstMacroWins) {
  auto unit = parse("void f(int a) {\n  int x = SHRT_MAX;\n  int y = INT_MAX;\n}\n");
  EXPECT_EQ(discover_upper_bound(*unit, kNoLimits).macro, "SHRT_MAX");
}

TEST(Bound, ValueFromLimitsFile) {
  std::string path = ::testing::TempDir() + "/limits_small.h";
  std::ofstream(path) << "#define CHAR_MAX 100\n#define CHAR_MIN (-CHAR_MAX - 1)\n";
  auto unit = parse("void f(char c) {\n  if (c < CHAR_MAX) {\n    c = c + 1;\n  }\n}\n");
  BoundInfo b = discover_upper_bound(*unit, path);
  EXPECT_EQ(b.upper_value, 100);
  EXPECT_EQ(b.origin, BoundOrigin::LimitsFile);
  ASSERT_TRUE(b.file_minimum);
  EXPECT_EQ(*b.file_minimum, -101);
}

TEST(Bound, SystemLimitsFile) {
  if (!std::ifstream("/usr/include/limits.h")) GTEST_SKIP() << "no system limits.h";
  auto defs = parse_limits(read_file("/usr/include/limits.h"));
  auto unit = parse("void f(int a) {\n  if (a < INT_MAX) {\n    a = a + 1;\n  }\n}\n");
  EXPECT_EQ(discover_upper_bound(*unit, "/usr/include/limits.h").upper_value, 2147483647);
  if (defs.count("INT_MAX")) EXPECT_EQ(defs.at("INT_MAX"), 2147483647);
}

TEST(LimitsParser, Forms) {
  auto defs = parse_limits(
      "/* header */\n"
      "#  define A 10 // ten\n"
      "#define B 0x10U\n"
      "#define C (A * 2 - \\\n   B)\n"
      "#define D -5L\n"
      "#define F(x) ((x) + 1)\n"
      "#define EMPTY\n"
      "#define G UNKNOWN_THING\n"
      "#ifdef X\n#endif\n");
  EXPECT_EQ(defs.at("A"), 10);
  EXPECT_EQ(defs.at("B"), 16);
  EXPECT_EQ(defs.at("C"), 4);
  EXPECT_EQ(defs.at("D"), -5);
  EXPECT_FALSE(defs.count("F"));
  EXPECT_FALSE(defs.count("EMPTY"));
  EXPECT_FALSE(defs.count("G"));
}

TEST(LimitsParser, MalformedReportsLine) {
  try {
    parse_limits("#define A 1\n#define B (2 + 3\n");
    FAIL() << "expected MalformedLimitsFile";
  } catch (const MalformedLimitsFile& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_limits("#define A 1 $ 2\n"), MalformedLimitsFile);
}

TEST(Checker, MotivatingExampleReported) {
  auto unit = frontend::parse_translation_unit(
      read_file(std::string(GUARDFIX_FIXTURE_DIR) + "/motivating.c"), "motivating.c");
  auto result = analyze(unit);
  ASSERT_EQ(result.reports.size(), 1u);
  const auto& r = result.reports[0];
  EXPECT_EQ(r.line, 8u);
  EXPECT_EQ(r.function, "bad");
  EXPECT_EQ(r.variable_base, "result");
  EXPECT_EQ(r.bound.macro, "UINT_MAX");
  EXPECT_EQ(r.direction, "overflow");
  EXPECT_EQ(r.statement, "unsigned int result = data * data;");
  Integer data = r.witness.at("data1");
  EXPECT_GT(data * data, Integer("4294967295"));
  EXPECT_TRUE(data > 65535 || data < -65535);
}

TEST(Checker, ConstantSumNotReported) {
  auto result = analyze(parse("int f(void) {\n  int r = 2 + 3;\n  return r;\n}\n"));
  EXPECT_TRUE(result.reports.empty());
}

TEST(Checker, UnderflowDirection) {
  auto result = analyze(parse("int f(int a) {\n  if (a < 0) {\n    int r = a * 3;\n  }\n  return 0;\n}\n"));
  ASSERT_EQ(result.reports.size(), 1u);
  EXPECT_EQ(result.reports[0].direction, "underflow");
}

TEST(Checker, GuardedSiteNotReported) {
  auto result = analyze(parse(
      "int f(int a) {\n  if (a <= 46340 && a >= -46340) {\n    int r = a * a;\n    return r;\n  }\n  return 0;\n}\n"));
  EXPECT_TRUE(result.reports.empty());
}

TEST(Checker, CopyIsNotACheckedSite) {
  auto result = analyze(parse("int f(int a) {\n  int r = a;\n  return r;\n}\n"));
  EXPECT_TRUE(result.reports.empty());
}

TEST(Checker, MonotoneInBound) {
  std::string src = "int f(char a, char b) {\n  int t = a * b;\n  int u = a + 100;\n  return 0;\n}\n";
  auto unit = parse(src);
  std::set<std::uint32_t> previous;
  for (const char* macro : {"LLONG_MAX", "INT_MAX", "SHRT_MAX", "CHAR_MAX"}) {
    std::set<std::uint32_t> lines;
    for (const auto& r : analyze(unit, bound_for_macro(macro)).reports) lines.insert(r.line);
    for (auto l : previous) EXPECT_TRUE(lines.count(l)) << macro << " lost line " << l;
    previous = lines;
  }
  EXPECT_EQ(previous, (std::set<std::uint32_t>{2, 3}));
}

TEST(Checker, EightBitProgramsMatchExecution) {
  std::mt19937_64 rng(23);
  BoundInfo bound = bound_for_macro("CHAR_MAX");
  int with_reports = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::string src = testing::random_small_program(rng, 2, 5);
    auto unit = parse(src);
    std::set<std::uint32_t> expected;
    for (int a = -128; a <= 127; ++a) {
      for (int b = -128; b <= 127; ++b) {
        auto run = testing::execute(*unit, "f", {a, b});
        for (const auto& e : run.assignments) {
          if (testing::arithmetic_site(*e.stmt) && (e.value > 127 || e.value < -127)) {
            expected.insert(e.stmt->span.begin.line);
          }
        }
      }
    }
    std::set<std::uint32_t> got;
    auto result = analyze(unit, bound);
    for (const auto& r : result.reports) {
      got.insert(r.line);
      // The witness drives the program through an out-of-range value at the site.
      // Inputs outside the slice are free: any value reaching the site will do.
      auto range = [&](const char* sym) {
        std::vector<Integer> values;
        if (r.witness.count(sym)) return std::vector<Integer>{r.witness.at(sym)};
        for (int v = -128; v <= 127; ++v) values.push_back(v);
        return values;
      };
      bool hit = false;
      for (const auto& a : range("a0")) {
        for (const auto& b : range("b0")) {
          for (const auto& e : testing::execute(*unit, "f", {a, b}).assignments) {
            if (e.stmt->span.begin.line == r.line && (e.value > 127 || e.value < -127)) hit = true;
          }
          if (hit) break;
        }
        if (hit) break;
      }
      EXPECT_TRUE(hit) << src << " line " << r.line;
    }
    EXPECT_EQ(got, expected) << src;
    with_reports += !got.empty();
  }
  EXPECT_GT(with_reports, 10);
}

TEST(Preconditions, AddExamples) {
  BoundInfo b = bound_for_macro("INT_MAX");
  EXPECT_EQ(eval_precondition_add_const(2147483647, 1, b), Safety::Unsafe);
  EXPECT_EQ(eval_precondition_add_const(5, 10, b), Safety::Safe);
}

TEST(Preconditions, MulExamples) {
  BoundInfo b = bound_for_macro("INT_MAX");
  EXPECT_EQ(eval_precondition_mul_const(1073741824, 2, b), Safety::Unsafe);
  EXPECT_EQ(eval_precondition_mul_const(3, 7, b), Safety::Safe);
  EXPECT_THROW(eval_precondition_mul_const(3, 0, b), DivisorZero);
}

TEST(Preconditions, SquareExamples) {
  BoundInfo i = bound_for_macro("INT_MAX");
  EXPECT_EQ(Integer(46340) * 46340, Integer("2147395600"));
  EXPECT_EQ(eval_precondition_square(46341, i), Safety::Unsafe);
  EXPECT_EQ(eval_precondition_square(46340, i), Safety::Safe);
  EXPECT_EQ(eval_precondition_square(0, i), Safety::Safe);
  BoundInfo u = bound_for_macro("UINT_MAX");
  EXPECT_EQ(eval_precondition_square(65535, u), Safety::Safe);
  EXPECT_EQ(eval_precondition_square(65536, u), Safety::Unsafe);
}

TEST(Preconditions, EightBitSweepsAreSound) {
  BoundInfo b = bound_for_macro("CHAR_MAX");
  int safe_add = 0, safe_mul = 0, safe_sq = 0;
  for (int s1 = -128; s1 <= 127; ++s1) {
    if (eval_precondition_square(s1, b) == Safety::Safe) {
      ++safe_sq;
      EXPECT_LE(s1 * s1, 127);
    }
    for (int s2 = -128; s2 <= 127; ++s2) {
      if (eval_precondition_add_const(s1, s2, b) == Safety::Safe) {
        ++safe_add;
        EXPECT_TRUE(s1 + s2 <= 127 && s1 + s2 >= -127) << s1 << "+" << s2;
      }
      if (s2 == 0) continue;
      if (eval_precondition_mul_const(s1, s2, b) == Safety::Safe) {
        ++safe_mul;
        EXPECT_TRUE(s1 * s2 <= 127 && s1 * s2 >= -127) << s1 << "*" << s2;
      }
    }
  }
  EXPECT_GT(safe_add, 0);
  EXPECT_GT(safe_mul, 0);
  EXPECT_EQ(safe_sq, 23);
}

}  // namespace
}  // namespace guardfix::overflow
