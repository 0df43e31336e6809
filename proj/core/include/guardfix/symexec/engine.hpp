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
#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "guardfix/cfg/paths.hpp"
#include "guardfix/frontend/ast.hpp"
#include "guardfix/smt/solver.hpp"
#include "guardfix/symexec/checker.hpp"
#include "guardfix/symexec/report.hpp"
#include "guardfix/symexec/summary.hpp"

namespace guardfix::symexec {

struct EngineOptions {
  cfg::WalkOptions walk;
  smt::SolverOptions solver;
  int workers = 1;
  /// Prefix of problem ids; empty selects a digest of the analyzed text.
  std::string id_stamp;
  /// Keep the SMT-LIB text of every completed path.
  bool dump_paths = false;
};

struct AnalysisStats {
  std::uint64_t paths_completed = 0;
  std::uint64_t paths_infeasible = 0;
  std::uint64_t paths_abandoned = 0;
  std::uint64_t notifications = 0;
  std::uint64_t solver_queries = 0;
  std::uint64_t subprocess_calls = 0;
  double seconds = 0;
};

struct AnalysisResult {
  std::vector<BugReport> reports;
  std::vector<Diagnostic> diagnostics;
  AnalysisStats stats;
  std::vector<std::string> path_dumps;
};

class Engine {
 public:
  explicit Engine(EngineOptions options = {},
                  SummaryRegistry summaries = SummaryRegistry::with_defaults());
  ~Engine();

  void register_checker(std::shared_ptr<Checker> checker);
  const std::vector<std::shared_ptr<Checker>>& checkers() const { return checkers_; }
  const EngineOptions& options() const { return options_; }
  SummaryRegistry& summaries() { return summaries_; }

  /// Explores every root of the unit. Reports are deduplicated per
  /// (checker, statement), sorted and numbered.
  AnalysisResult analyze(std::shared_ptr<const frontend::TranslationUnit> unit);

 private:
  smt::SmtSolver& solver_for(std::size_t worker);

  EngineOptions options_;
  SummaryRegistry summaries_;
  std::vector<std::shared_ptr<Checker>> checkers_;
  std::mutex pool_mutex_;
  std::vector<std::unique_ptr<smt::SmtSolver>> solvers_;
};

std::string default_id_stamp(std::string_view text);

/// Sorts by (file, line, column, path, checker) and assigns
/// `<stamp>-<seq>-<checker>` ids.
void finalize_reports(std::vector<BugReport>& reports, const std::string& stamp);

}  // namespace guardfix::symexec
