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
#include <filesystem>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "guardfix/bench/corpus.hpp"
#include "guardfix/bench/generator.hpp"
#include "guardfix/frontend/parser.hpp"
#include "guardfix/smt/solver.hpp"
#include "guardfix/support/text.hpp"
#include "support/interpreter.hpp"

namespace fs = std::filesystem;
using namespace guardfix;
using namespace guardfix::bench;

namespace {

const Integer kIntMax(2147483647);

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string temp_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("guardfix_bench_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

smt::SolverOptions plain_solver() {
  smt::SolverOptions o;
  if (const char* env = std::getenv("GUARDFIX_SOLVER")) o.path = env;
  o.fast_path = false;
  o.cache = false;
  return o;
}

// Builds `guard && site-result out of range` from the decoy's source text.
smt::ConstraintSystem decoy_probe(const std::string& guard_line, const std::string& site_line) {
  using namespace smt;
  ConstraintSystem sys;
  Term d = var("d");
  Term e = var("e");
  sys.add(definition_group(), conjunction({relation(RelOp::Ge, d, constant(Integer(-2147483648LL))),
                                           relation(RelOp::Le, d, constant(kIntMax))}));
  static const std::regex cond(R"(d (<=|>=|<|>) (-?\d+))");
  for (std::sregex_iterator it(guard_line.begin(), guard_line.end(), cond), end; it != end; ++it) {
    auto op = (*it)[1].str();
    RelOp rel = op == "<=" ? RelOp::Le : op == ">=" ? RelOp::Ge : op == "<" ? RelOp::Lt : RelOp::Gt;
    sys.add(path_condition_group(), relation(rel, d, constant(*parse_integer((*it)[2].str()))));
  }
  std::smatch m;
  static const std::regex site(R"(e = d ([-+*]) (d|\d+);)");
  EXPECT_TRUE(std::regex_search(site_line, m, site)) << site_line;
  Term rhs = m[2] == "d" ? d : constant(*parse_integer(m[2].str()));
  Term value = m[1] == "+" ? add(d, rhs) : m[1] == "-" ? sub(d, rhs) : mul(d, rhs);
  sys.add(definition_group(), relation(RelOp::Eq, e, value));
  sys.add(GroupTag{GroupKind::Probe, 1}, disjunction({relation(RelOp::Gt, e, constant(kIntMax)),
                                                      relation(RelOp::Lt, e, constant(Integer(-kIntMax)))}));
  return sys;
}

}  // namespace

TEST(Generator, DeterministicUnderFixedSeed) {
  BenchSpec spec;
  spec.function_count = 3;
  spec.loop_iteration_count = 2;
  spec.false_positive_count = 1;
  spec.seed_depth = 4;
  spec.seed = 7;
  auto a = generate_program(spec, "p.c");
  auto b = generate_program(spec, "p.c");
  EXPECT_EQ(a.source, b.source);
  EXPECT_EQ(to_json(a.manifest), to_json(b.manifest));
  spec.seed = 8;
  EXPECT_NE(generate_program(spec, "p.c").source, a.source);
}

TEST(Generator, ProgramsParseAndManifestLinesExist) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    BenchSpec spec;
    spec.seed = seed;
    spec.seed_depth = static_cast<int>(seed % 5);
    spec.false_positive_count = static_cast<int>(seed % 4);
    auto p = generate_program(spec, "p.c");
    ASSERT_NO_THROW(frontend::parse_translation_unit(p.source, "p.c")) << p.source;
    auto lines = lines_of(p.source);
    ASSERT_GE(lines.size(), p.manifest.tp_line);
    EXPECT_NE(lines[p.manifest.tp_line - 1].find("r = s"), std::string::npos);
    EXPECT_EQ(p.manifest.decoy_lines.size(), static_cast<std::size_t>(spec.false_positive_count));
    for (auto l : p.manifest.decoy_lines) EXPECT_NE(lines.at(l - 1).find("e = d"), std::string::npos);
  }
}

TEST(Generator, SeedDepthNestsTheTruePositive) {
  BenchSpec spec;
  spec.seed_depth = 4;
  spec.seed = 3;
  auto p = generate_program(spec, "p.c");
  auto lines = lines_of(p.source);
  const auto& site = lines[p.manifest.tp_line - 1];
  // Four nesting levels plus the function body.
  EXPECT_EQ(site.find_first_not_of(' '), 4u * 5u);
}

TEST(Generator, DecoyProbesAreUnsat) {
  smt::SmtSolver solver(plain_solver());
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    BenchSpec spec;
    spec.seed = seed;
    spec.false_positive_count = 3;
    auto p = generate_program(spec, "p.c");
    auto lines = lines_of(p.source);
    for (auto l : p.manifest.decoy_lines) {
      auto sys = decoy_probe(lines[l - 2], lines[l - 1]);
      EXPECT_EQ(solver.check_sat(sys).kind, smt::Verdict::Kind::Unsat) << lines[l - 2] << "\n" << lines[l - 1];
      ++checked;
    }
  }
  EXPECT_EQ(checked, 36);
}

TEST(Generator, WitnessReachesAnOutOfRangeValue) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    BenchSpec spec;
    spec.seed = seed;
    spec.seed_depth = 1 + static_cast<int>(seed % 4);
    auto p = generate_program(spec, "p.c");
    auto unit = frontend::parse_translation_unit(p.source, "p.c");
    guardfix::testing::ExecOptions opts;
    opts.inputs = p.manifest.witness;
    auto run = guardfix::testing::execute(*unit, "process_input", {}, opts);
    bool hit = false;
    for (const auto& ev : run.assignments) {
      if (ev.stmt->span.begin.line == p.manifest.tp_line) {
        hit = true;
        EXPECT_TRUE(ev.value > kIntMax || ev.value < -kIntMax) << to_string(ev.value);
      }
    }
    EXPECT_TRUE(hit) << "seed " << seed;
    // Zero inputs reach the site too, in range.
    opts.inputs = {Integer(0), p.manifest.witness[1]};
    auto safe = guardfix::testing::execute(*unit, "process_input", {}, opts);
    bool in_range = false;
    for (const auto& ev : safe.assignments) {
      if (ev.stmt->span.begin.line == p.manifest.tp_line) in_range = ev.value <= kIntMax && ev.value >= -kIntMax;
    }
    EXPECT_TRUE(in_range) << "seed " << seed;
  }
}

TEST(Generator, LocClassesWithinTenPercent) {
  for (const auto& cls : loc_classes()) {
    BenchSpec spec;
    spec.loc_class = cls;
    spec.seed = 11;
    auto p = generate_program(spec, "p.c");
    double target = loc_class_lines(cls);
    EXPECT_NEAR(static_cast<double>(p.manifest.loc), target, target * 0.10) << cls;
    EXPECT_EQ(p.manifest.loc, count_lines(p.source));
  }
  EXPECT_THROW(loc_class_lines("3K"), Error);
}

TEST(Manifest, RoundTripsThroughJsonLines) {
  auto dir = temp_dir("manifest");
  auto entries = generate_corpus(dir, 4, 5, {"", "1K"});
  auto back = read_manifest(dir + "/manifest.jsonl");
  ASSERT_EQ(back.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(to_json(back[i]), to_json(entries[i]));
  EXPECT_EQ(back[1].loc_class, "1K");
  fs::remove_all(dir);
}

TEST(Corpus, SeededCorpusHasNoFalsePositivesOrNegatives) {
  auto dir = temp_dir("seeded");
  auto manifest = generate_corpus(dir, 10, 21, {});
  auto m = run_corpus(dir, manifest);
  EXPECT_EQ(m.tp, 10u);
  EXPECT_EQ(m.fp, 0u);
  EXPECT_EQ(m.fn, 0u);
  EXPECT_EQ(m.tp + m.fn, m.manifest_true_positives);
  EXPECT_EQ(m.revalidated_programs, 10u);
  for (const auto& p : m.programs) {
    EXPECT_EQ(p.candidates, 1u);
    EXPECT_GT(p.loc_after, p.loc_before);
  }

  auto j = to_json(m);
  const auto& t = j["totals"];
  EXPECT_DOUBLE_EQ(t["detection_rate"].get<double>(),
                   t["tp"].get<double>() / (t["tp"].get<double>() + t["fn"].get<double>()));
  EXPECT_DOUBLE_EQ(t["loc_increase"].get<double>(),
                   (t["loc_after"].get<double>() - t["loc_before"].get<double>()) / t["loc_before"].get<double>());
  EXPECT_DOUBLE_EQ(t["repair_overhead"].get<double>(),
                   t["repair_seconds"].get<double>() / t["detection_seconds"].get<double>());
  EXPECT_NE(format_table(m).find("TP 10  FP 0  FN 0"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Corpus, ZeroTruePositivesGivesNoReportsOrRepairs) {
  auto dir = temp_dir("clean");
  std::vector<ManifestEntry> manifest;
  for (int i = 0; i < 3; ++i) {
    BenchSpec spec;
    spec.seed = 100 + static_cast<std::uint64_t>(i);
    spec.seed_true_positive = false;
    auto name = "clean_" + std::to_string(i) + ".c";
    auto p = generate_program(spec, name);
    EXPECT_EQ(p.manifest.tp_line, 0u);
    write_file_atomic(dir + "/" + name, p.source);
    manifest.push_back(p.manifest);
  }
  auto m = run_corpus(dir, manifest);
  EXPECT_EQ(m.tp + m.fp + m.fn, 0u);
  EXPECT_EQ(m.manifest_true_positives, 0u);
  EXPECT_EQ(m.loc_after, m.loc_before);
  for (const auto& p : m.programs) EXPECT_EQ(p.candidates, 0u);
  fs::remove_all(dir);
}

TEST(Corpus, ManifestMismatchIsReported) {
  auto dir = temp_dir("mismatch");
  auto manifest = generate_corpus(dir, 2, 3, {});
  write_file_atomic(dir + "/stray.c", "int main(void) { return 0; }\n");
  EXPECT_THROW(run_corpus(dir, manifest), ManifestMismatch);
  fs::remove(dir + "/stray.c");
  auto missing = manifest;
  missing.push_back(manifest[0]);
  missing.back().file = "absent.c";
  EXPECT_THROW(run_corpus(dir, missing), ManifestMismatch);
  fs::remove_all(dir);
}
