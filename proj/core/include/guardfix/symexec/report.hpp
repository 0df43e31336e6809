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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guardfix/frontend/ast.hpp"
#include "guardfix/smt/system.hpp"
#include "guardfix/support/integer.hpp"

namespace guardfix::symexec {

enum class BoundOrigin { LimitsFile, ProgramUsage, Default };

std::string to_string(BoundOrigin origin);

struct BoundInfo {
  std::string macro = "INT_MAX";
  Integer upper_value = 2147483647;
  Integer lower_value = -2147483647;
  BoundOrigin origin = BoundOrigin::Default;
  /// True minimum recorded by a limits file (e.g. INT_MIN), when present.
  std::optional<Integer> file_minimum;

  bool is_unsigned() const { return macro == "UINT_MAX"; }
};

struct BugReport {
  std::string problem_id;
  std::string checker_id;
  std::string file;
  std::string function;
  std::uint32_t line = 0;
  std::uint32_t column = 0;
  /// Byte offsets of the reported statement in the analyzed text.
  std::uint32_t begin_offset = 0;
  std::uint32_t end_offset = 0;
  std::string statement;
  /// SMT symbol, program-level base name and kind of the detecting variable.
  std::string variable;
  std::string variable_base;
  std::string variable_kind;
  smt::ConstraintSystem slice;
  std::uint32_t probe_group = 0;
  BoundInfo bound;
  std::vector<bool> path;
  /// "overflow" or "underflow": the probe disjunct the witness satisfies.
  std::string direction;
  std::map<std::string, Integer> witness;

  /// Set while the analyzed unit is alive; not serialized.
  const frontend::Stmt* stmt = nullptr;
};

/// Non-report outcomes: unconfirmed findings, abandoned paths.
struct Diagnostic {
  std::string kind;  // "unconfirmed", "abandoned-path", ...
  std::string file;
  std::uint32_t line = 0;
  std::string message;
};

nlohmann::json to_json(const BoundInfo& bound);
BoundInfo bound_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BugReport& report);
BugReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Diagnostic& diagnostic);
Diagnostic diagnostic_from_json(const nlohmann::json& j);

}  // namespace guardfix::symexec
