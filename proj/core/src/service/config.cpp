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
#include "guardfix/service/config.hpp"

#include <filesystem>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>

#include "guardfix/support/text.hpp"

namespace guardfix::service {

namespace {

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1" || value == "on") return true;
  if (value == "false" || value == "no" || value == "0" || value == "off") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + value + "'");
}

}  // namespace

RunConfig parse_run_config(const std::string& text, RunConfig config) {
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    std::string line = boost::algorithm::trim_copy(raw.substr(0, hash));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    std::string key = boost::algorithm::trim_copy(line.substr(0, eq));
    std::string value = boost::algorithm::trim_copy(line.substr(eq + 1));
    if (key == "unroll_bound") {
      config.unroll_bound = parse_int(key, value);
    } else if (key == "call_depth") {
      config.call_depth = parse_int(key, value);
    } else if (key == "solver") {
      config.solver_path = value;
    } else if (key == "solver_timeout_ms") {
      config.solver_timeout_ms = parse_int(key, value);
    } else if (key == "limits_file") {
      config.limits_path = value;
    } else if (key == "pattern_pool") {
      config.pattern_pool_path = value;
    } else if (key == "handler") {
      try {
        config.handler = repair::handler_variant_from_string(value);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "auto_apply") {
      config.auto_apply = parse_bool(key, value);
    } else if (key == "workers") {
      config.workers = parse_int(key, value);
    } else {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  return config;
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
  if (!std::filesystem::is_regular_file(path)) throw ConfigError("config file not found: " + path);
  return parse_run_config(read_file(path), std::move(base));
}

void validate_run_config(const RunConfig& c) {
  auto positive = [](const char* name, int v) {
    if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive("unroll_bound", c.unroll_bound);
  positive("call_depth", c.call_depth);
  positive("solver_timeout_ms", c.solver_timeout_ms);
  positive("workers", c.workers);
  if (!c.limits_path.empty() && !std::filesystem::is_regular_file(c.limits_path)) {
    throw ConfigError("limits file not found: " + c.limits_path);
  }
  if (!c.pattern_pool_path.empty() && !std::filesystem::is_regular_file(c.pattern_pool_path)) {
    throw ConfigError("pattern pool not found: " + c.pattern_pool_path);
  }
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"unroll_bound", c.unroll_bound},
          {"call_depth", c.call_depth},
          {"solver", c.solver_path},
          {"solver_timeout_ms", c.solver_timeout_ms},
          {"limits_file", c.limits_path},
          {"pattern_pool", c.pattern_pool_path},
          {"handler", repair::to_string(c.handler)},
          {"auto_apply", c.auto_apply},
          {"workers", c.workers}};
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.unroll_bound = j.value("unroll_bound", c.unroll_bound);
  c.call_depth = j.value("call_depth", c.call_depth);
  c.solver_path = j.value("solver", c.solver_path);
  c.solver_timeout_ms = j.value("solver_timeout_ms", c.solver_timeout_ms);
  c.limits_path = j.value("limits_file", c.limits_path);
  c.pattern_pool_path = j.value("pattern_pool", c.pattern_pool_path);
  c.handler = repair::handler_variant_from_string(j.value("handler", repair::to_string(c.handler)));
  c.auto_apply = j.value("auto_apply", c.auto_apply);
  c.workers = j.value("workers", c.workers);
  return c;
}

repair::AnalysisConfig analysis_config(const RunConfig& c) {
  repair::AnalysisConfig a;
  a.engine.walk.unroll_bound = c.unroll_bound;
  a.engine.walk.max_call_depth = c.call_depth;
  a.engine.solver.path = c.solver_path.empty() ? smt::default_solver_path() : c.solver_path;
  a.engine.solver.timeout = std::chrono::milliseconds(c.solver_timeout_ms);
  a.engine.workers = c.workers;
  a.limits_path = c.limits_path;
  return a;
}

repair::PatternPool load_pool(const RunConfig& c) {
  if (c.pattern_pool_path.empty()) return repair::default_pattern_pool();
  return repair::load_pattern_pool(c.pattern_pool_path);
}

}  // namespace guardfix::service
