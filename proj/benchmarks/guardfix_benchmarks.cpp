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
#include <benchmark/benchmark.h>

#include "guardfix/bench/generator.hpp"
#include "guardfix/frontend/parser.hpp"
#include "guardfix/repair/diff.hpp"
#include "guardfix/repair/repair.hpp"
#include "guardfix/smt/solver.hpp"

using namespace guardfix;

namespace {

std::string program(const std::string& loc_class) {
  bench::BenchSpec spec;
  spec.seed = 42;
  spec.loc_class = loc_class;
  return bench::generate_program(spec, "bench.c").source;
}

repair::AnalysisConfig config() {
  repair::AnalysisConfig c;
  c.engine.solver.path = smt::default_solver_path();
  return c;
}

void BM_Parse(benchmark::State& state, const std::string& loc_class) {
  auto src = program(loc_class);
  for (auto _ : state) benchmark::DoNotOptimize(frontend::parse_translation_unit(src, "bench.c"));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(src.size()));
}
BENCHMARK_CAPTURE(BM_Parse, 1K, std::string("1K"));
BENCHMARK_CAPTURE(BM_Parse, 6K, std::string("6K"));

void BM_Analyze(benchmark::State& state, const std::string& loc_class) {
  auto unit = frontend::parse_translation_unit(program(loc_class), "bench.c");
  auto c = config();
  for (auto _ : state) benchmark::DoNotOptimize(repair::analyze_unit(unit, c));
}
BENCHMARK_CAPTURE(BM_Analyze, minimal, std::string())->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Analyze, 1K, std::string("1K"))->Unit(benchmark::kMillisecond);

void BM_GenerateCandidate(benchmark::State& state) {
  auto unit = frontend::parse_translation_unit(program(""), "bench.c");
  auto c = config();
  auto result = repair::analyze_unit(unit, c);
  smt::SmtSolver solver(c.engine.solver);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        repair::generate_candidate(result.reports.at(0), *unit, repair::default_pattern_pool(), solver));
  }
}
BENCHMARK(BM_GenerateCandidate)->Unit(benchmark::kMicrosecond);

void BM_FastPath(benchmark::State& state) {
  smt::ConstraintSystem sys;
  auto s = smt::var("s");
  auto r = smt::var("r");
  sys.add(smt::definition_group(), smt::relation(smt::RelOp::Ge, s, smt::constant(Integer(-46340))));
  sys.add(smt::definition_group(), smt::relation(smt::RelOp::Le, s, smt::constant(Integer(46340))));
  sys.add(smt::definition_group(), smt::relation(smt::RelOp::Eq, r, smt::mul(s, s)));
  sys.add(smt::GroupTag{smt::GroupKind::Probe, 1},
          smt::relation(smt::RelOp::Gt, r, smt::constant(Integer(2147483647))));
  for (auto _ : state) benchmark::DoNotOptimize(smt::quick_decide(sys));
}
BENCHMARK(BM_FastPath);

void BM_UnifiedDiff(benchmark::State& state) {
  auto before = program("2K");
  auto after = before;
  after.insert(after.size() / 2, "    /* changed */\n");
  for (auto _ : state) benchmark::DoNotOptimize(repair::unified_diff(before, after, "a/x.c", "b/x.c"));
}
BENCHMARK(BM_UnifiedDiff);

}  // namespace

BENCHMARK_MAIN();
