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
#include <optional>
#include <string>
#include <vector>

#include "guardfix/frontend/ast.hpp"
#include "guardfix/smt/solver.hpp"
#include "guardfix/symexec/report.hpp"
#include "guardfix/symexec/state.hpp"

namespace guardfix::symexec {

enum class SiteKind { Assignment };

/// Everything a checker may read at a notification.
struct SiteContext {
  const PathState& state;
  const frontend::Stmt& stmt;
  const SymVar& defined;
  /// Right-hand side as written; null for ++/--.
  const frontend::Expr* rhs;
  const frontend::TranslationUnit& unit;
  const std::string& function;
  const std::vector<bool>& path;
  smt::SmtSolver& solver;
};

/// Checkers are shared by all path workers; on_site must not mutate shared state.
class Checker {
 public:
  virtual ~Checker() = default;

  virtual std::string id() const = 0;
  virtual std::vector<SiteKind> site_kinds() const { return {SiteKind::Assignment}; }
  /// Called once per analyzed unit before any notification.
  virtual void begin_unit(const frontend::TranslationUnit& unit) { (void)unit; }
  virtual std::optional<BugReport> on_site(const SiteContext& site,
                                           std::vector<Diagnostic>& diagnostics) const = 0;
};

}  // namespace guardfix::symexec
