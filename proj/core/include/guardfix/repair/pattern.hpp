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
#include "guardfix/support/error.hpp"
#include "guardfix/symexec/report.hpp"

namespace guardfix::repair {

enum class HandlerVariant { V1, V2 };

std::string to_string(HandlerVariant variant);
HandlerVariant handler_variant_from_string(const std::string& text);

inline constexpr const char* kHandlerName = "guardfix_overflow_handler";

class NoApplicablePattern : public Error {
 public:
  using Error::Error;
};

class UnboundPlaceholder : public Error {
 public:
  explicit UnboundPlaceholder(const std::string& name)
      : Error("unbound placeholder {" + name + "}"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class MalformedPatternPool : public Error {
 public:
  using Error::Error;
};

/// One scored fact test, e.g. {"fact": "operator", "in": ["+", "-"]}.
struct PatternProperty {
  std::string fact;
  std::vector<std::string> any_of;
  std::optional<bool> equals;
};

struct RepairPattern {
  std::string id;
  /// Binding rule: "square", "additive" or "multiplicative".
  std::string guard;
  HandlerVariant handler = HandlerVariant::V2;
  std::vector<PatternProperty> properties;
  /// Template text per operand shape ("range", "add", "sub", "mul", "div").
  std::map<std::string, std::string> templates;
};

struct PatternPool {
  std::vector<RepairPattern> patterns;
  std::map<HandlerVariant, std::string> handlers;
};

PatternPool parse_pattern_pool(const nlohmann::json& j);
PatternPool load_pattern_pool(const std::string& path);
/// The pool shipped with the library.
const PatternPool& default_pattern_pool();

/// Arithmetic shape of a checked statement.
struct SiteShape {
  /// '+', '-', '*' or '/'. Unary minus is 0 - x and ++/-- are x + 1 / x - 1.
  char op = '+';
  std::string lhs_text;
  std::string rhs_text;
  std::optional<Integer> lhs_constant;
  std::optional<Integer> rhs_constant;
  bool operands_equal = false;
  bool has_side_effects = false;
  /// Assigned lvalue text and, for declarations, the declaration without its initializer.
  std::string target_text;
  std::optional<std::string> declaration;
  /// Statement rewritten as a plain assignment.
  std::string assignment_text;
};

SiteShape site_shape(const frontend::Stmt& stmt, const frontend::TranslationUnit& unit);

/// Number of satisfied properties.
int score(const RepairPattern& pattern, const SiteShape& shape);

const RepairPattern& select_pattern(const SiteShape& shape, const PatternPool& pool);

struct Instantiation {
  std::string template_key;
  std::map<std::string, std::string> bindings;
  /// Guard block text (unindented, no trailing newline).
  std::string code;
};

struct ReportMeta {
  std::string file;
  std::string problem_id;
  std::uint32_t line = 0;
};

Instantiation instantiate_pattern(const RepairPattern& pattern, const SiteShape& shape,
                                  const symexec::BoundInfo& bound, const ReportMeta& meta,
                                  const PatternPool& pool,
                                  std::optional<HandlerVariant> handler = std::nullopt);

/// Replaces every {name}; any placeholder left unbound throws.
std::string substitute(const std::string& text, const std::map<std::string, std::string>& bindings);

}  // namespace guardfix::repair
