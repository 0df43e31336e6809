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

#include <optional>
#include <string>

#include "guardfix/symexec/checker.hpp"

namespace guardfix::overflow {

inline constexpr const char* kCheckerId = "IOF";

/// Assignments whose value is computed by + - * / (or a compound form).
bool is_checked_site(const frontend::Stmt& stmt, const frontend::Expr* rhs);

/// Probes the defining slice of the site's variable against the bound.
/// Sat yields a report, Unknown an "unconfirmed" diagnostic.
std::optional<symexec::BugReport> check_assignment_site(const symexec::SiteContext& site,
                                                        const symexec::BoundInfo& bound,
                                                        std::vector<symexec::Diagnostic>& diagnostics);

/// Probe group: var > upper || var < lower.
smt::Formula probe_formula(const std::string& symbol, const symexec::BoundInfo& bound);

class OverflowChecker : public symexec::Checker {
 public:
  explicit OverflowChecker(std::string limits_path = "/usr/include/limits.h",
                           std::string id = kCheckerId);
  /// Uses `bound` for every unit instead of discovering one.
  void fix_bound(symexec::BoundInfo bound) { fixed_ = std::move(bound); }

  std::string id() const override { return id_; }
  void begin_unit(const frontend::TranslationUnit& unit) override;
  std::optional<symexec::BugReport> on_site(const symexec::SiteContext& site,
                                            std::vector<symexec::Diagnostic>& diagnostics) const override;
  const symexec::BoundInfo& bound() const { return bound_; }

 private:
  std::string limits_path_;
  std::string id_;
  std::optional<symexec::BoundInfo> fixed_;
  symexec::BoundInfo bound_;
};

}  // namespace guardfix::overflow
