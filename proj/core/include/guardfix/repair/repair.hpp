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
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guardfix/frontend/ast.hpp"
#include "guardfix/repair/cluster.hpp"
#include "guardfix/repair/diff.hpp"
#include "guardfix/repair/pattern.hpp"
#include "guardfix/symexec/engine.hpp"

namespace guardfix::repair {

/// Detection settings shared by analysis and revalidation.
struct AnalysisConfig {
  symexec::EngineOptions engine;
  std::string limits_path = "/usr/include/limits.h";
  std::optional<symexec::BoundInfo> fixed_bound;
};

/// Runs the overflow checker over one unit.
symexec::AnalysisResult analyze_unit(std::shared_ptr<const frontend::TranslationUnit> unit,
                                     const AnalysisConfig& config);

enum class ValidationStatus { Unvalidated, ConstraintValidated, Revalidated, Failed };

std::string to_string(ValidationStatus status);
ValidationStatus validation_status_from_string(const std::string& text);

struct RepairCandidate {
  std::string problem_id;
  std::string file;
  std::string pattern_id;
  std::string template_key;
  std::map<std::string, std::string> bindings;
  /// Statement span in the analyzed text and its text at detection time.
  std::uint32_t begin_offset = 0;
  std::uint32_t end_offset = 0;
  std::uint32_t line = 0;
  std::string statement;
  /// Indented guard block replacing the statement.
  std::string replacement;
  /// Handler support text inserted at `injection_offset`; empty when the file has it.
  std::string injection;
  std::uint32_t injection_offset = 0;
  ValidationStatus status = ValidationStatus::Unvalidated;
  std::string failure_reason;
  std::string diff;
  std::string repair_type = "in-place";
};

nlohmann::json to_json(const RepairCandidate& candidate);
RepairCandidate candidate_from_json(const nlohmann::json& j);

struct RepairOptions {
  std::optional<HandlerVariant> handler;
  std::set<std::string> known_checkers = {"IOF"};
};

/// Steps 2-7: cluster, select variables, reconstrain, check, pick and fill a pattern.
/// Failures are recorded in the candidate rather than thrown.
RepairCandidate generate_candidate(const symexec::BugReport& report, const frontend::TranslationUnit& unit,
                                   const PatternPool& pool, smt::SmtSolver& solver,
                                   const RepairOptions& options = {});

/// Support text for a handler variant, placed before the first top-level item.
std::string handler_definition(HandlerVariant variant);

struct PatchResult {
  std::string text;
  std::string diff;
  /// Line of each inserted guard's wrapped statement in the patched text, per candidate.
  std::vector<std::uint32_t> statement_lines;
};

/// Replaces every candidate's statement with its guard block, injecting the handler
/// definition once when needed. Throws SpanDrift when a statement moved.
PatchResult insert_repairs(std::string_view text, const std::vector<const RepairCandidate*>& candidates);
PatchResult insert_repair(std::string_view text, const RepairCandidate& candidate);

struct RevalidationResult {
  bool revalidated = false;
  /// Fresh reports at repaired statements.
  std::vector<symexec::BugReport> remaining;
  /// Reports at sites that had none before.
  std::vector<symexec::BugReport> introduced;
  symexec::AnalysisResult analysis;
};

/// Re-analyzes the patched text. `before` holds the reports of the unpatched text.
RevalidationResult revalidate(const std::string& patched_text, const std::string& file_name,
                              const PatchResult& patch, const std::vector<symexec::BugReport>& before,
                              const AnalysisConfig& config);

}  // namespace guardfix::repair
