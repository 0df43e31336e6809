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

#include <string>

#include <nlohmann/json.hpp>

#include "guardfix/repair/pattern.hpp"
#include "guardfix/repair/repair.hpp"
#include "guardfix/support/error.hpp"

namespace guardfix::service {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  int unroll_bound = 10;
  int call_depth = 8;
  std::string solver_path;
  int solver_timeout_ms = 10000;
  std::string limits_path = "/usr/include/limits.h";
  /// Empty selects the built-in pool.
  std::string pattern_pool_path;
  repair::HandlerVariant handler = repair::HandlerVariant::V2;
  bool auto_apply = false;
  int workers = 1;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys are errors.
RunConfig parse_run_config(const std::string& text, RunConfig base = {});
RunConfig load_run_config(const std::string& path, RunConfig base = {});

/// Throws ConfigError for non-positive knobs or missing files.
void validate_run_config(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);

repair::AnalysisConfig analysis_config(const RunConfig& config);
repair::PatternPool load_pool(const RunConfig& config);

}  // namespace guardfix::service
