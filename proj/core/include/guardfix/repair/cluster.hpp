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

#include <set>
#include <string>
#include <vector>

#include "guardfix/frontend/ast.hpp"
#include "guardfix/smt/solver.hpp"
#include "guardfix/support/error.hpp"
#include "guardfix/symexec/report.hpp"

namespace guardfix::repair {

class StaleState : public Error {
 public:
  using Error::Error;
};

class UnknownChecker : public Error {
 public:
  explicit UnknownChecker(const std::string& id) : Error("unknown checker for problem id '" + id + "'") {}
};

struct BugCluster {
  symexec::BugReport report;
  const frontend::Stmt* stmt = nullptr;
  std::string detecting;
  std::vector<std::string> dependencies;
  smt::ConstraintSystem slice;
  symexec::BoundInfo bound;
};

/// Groups the report's data; the statement must still be at the reported span.
BugCluster cluster_bug(const symexec::BugReport& report, const frontend::TranslationUnit& unit);

std::vector<std::string> select_constraint_vars(const BugCluster& cluster);

struct GuardGroup {
  smt::GroupTag tag;
  std::vector<smt::Formula> formulas;
};

GuardGroup reconstrain(const BugCluster& cluster, const std::vector<std::string>& vars);

enum class ConstraintCheck { Validated, Failed };

struct ConstraintCheckResult {
  ConstraintCheck outcome = ConstraintCheck::Failed;
  /// Verdicts of probe+guard (must be Unsat) and guard-only (must be Sat).
  smt::Verdict::Kind with_probe = smt::Verdict::Kind::Unknown;
  smt::Verdict::Kind guard_only = smt::Verdict::Kind::Unknown;
  std::string reason;
};

ConstraintCheckResult build_and_check_new_system(const BugCluster& cluster, const GuardGroup& guard,
                                                 smt::SmtSolver& solver);

/// Checker id suffix of a problem id, resolved against `known`.
std::string determine_bug_type(const std::string& problem_id, const std::set<std::string>& known);

}  // namespace guardfix::repair
