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
#include "guardfix/symexec/report.hpp"

#include "guardfix/smt/smtlib.hpp"

namespace guardfix::symexec {

using nlohmann::json;
using guardfix::to_string;

std::string to_string(BoundOrigin origin) {
  switch (origin) {
    case BoundOrigin::LimitsFile: return "limits-file";
    case BoundOrigin::ProgramUsage: return "program-usage";
    case BoundOrigin::Default: return "default";
  }
  return "default";
}

namespace {

BoundOrigin origin_from_string(const std::string& s) {
  if (s == "limits-file") return BoundOrigin::LimitsFile;
  if (s == "program-usage") return BoundOrigin::ProgramUsage;
  if (s == "default") return BoundOrigin::Default;
  throw Error("unknown bound origin: " + s);
}

Integer integer_field(const json& j, const char* key) {
  auto v = parse_integer(j.at(key).get<std::string>());
  if (!v) throw Error(std::string("malformed integer field: ") + key);
  return *v;
}

}  // namespace

json to_json(const BoundInfo& bound) {
  json j = {{"macro", bound.macro},
            {"upper_value", to_string(bound.upper_value)},
            {"lower_value", to_string(bound.lower_value)},
            {"origin", to_string(bound.origin)}};
  if (bound.file_minimum) j["file_minimum"] = to_string(*bound.file_minimum);
  return j;
}

BoundInfo bound_from_json(const json& j) {
  BoundInfo b;
  b.macro = j.at("macro").get<std::string>();
  b.upper_value = integer_field(j, "upper_value");
  b.lower_value = integer_field(j, "lower_value");
  b.origin = origin_from_string(j.at("origin").get<std::string>());
  if (j.contains("file_minimum")) b.file_minimum = integer_field(j, "file_minimum");
  return b;
}

json to_json(const BugReport& r) {
  json witness = json::object();
  for (const auto& [k, v] : r.witness) witness[k] = to_string(v);
  return {{"problem_id", r.problem_id},
          {"checker_id", r.checker_id},
          {"file", r.file},
          {"function", r.function},
          {"line", r.line},
          {"column", r.column},
          {"begin_offset", r.begin_offset},
          {"end_offset", r.end_offset},
          {"statement", r.statement},
          {"variable", r.variable},
          {"variable_base", r.variable_base},
          {"variable_kind", r.variable_kind},
          {"slice", smt::emit_smtlib(r.slice)},
          {"probe_group", r.probe_group},
          {"bound", to_json(r.bound)},
          {"path", r.path},
          {"direction", r.direction},
          {"witness", witness}};
}

BugReport report_from_json(const json& j) {
  BugReport r;
  r.problem_id = j.at("problem_id").get<std::string>();
  r.checker_id = j.at("checker_id").get<std::string>();
  r.file = j.at("file").get<std::string>();
  r.function = j.at("function").get<std::string>();
  r.line = j.at("line").get<std::uint32_t>();
  r.column = j.at("column").get<std::uint32_t>();
  r.begin_offset = j.at("begin_offset").get<std::uint32_t>();
  r.end_offset = j.at("end_offset").get<std::uint32_t>();
  r.statement = j.at("statement").get<std::string>();
  r.variable = j.at("variable").get<std::string>();
  r.variable_base = j.at("variable_base").get<std::string>();
  r.variable_kind = j.at("variable_kind").get<std::string>();
  r.slice = smt::parse_smtlib(j.at("slice").get<std::string>());
  r.probe_group = j.at("probe_group").get<std::uint32_t>();
  r.bound = bound_from_json(j.at("bound"));
  r.path = j.at("path").get<std::vector<bool>>();
  r.direction = j.at("direction").get<std::string>();
  for (const auto& [k, v] : j.at("witness").items()) {
    auto value = parse_integer(v.get<std::string>());
    if (!value) throw Error("malformed witness value for " + k);
    r.witness[k] = *value;
  }
  return r;
}

json to_json(const Diagnostic& d) {
  return {{"kind", d.kind}, {"file", d.file}, {"line", d.line}, {"message", d.message}};
}

Diagnostic diagnostic_from_json(const json& j) {
  return {j.at("kind").get<std::string>(), j.at("file").get<std::string>(),
          j.at("line").get<std::uint32_t>(), j.at("message").get<std::string>()};
}

}  // namespace guardfix::symexec
