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

#include "guardfix/frontend/ast.hpp"
#include "guardfix/support/error.hpp"
#include "guardfix/symexec/report.hpp"

namespace guardfix::overflow {

using symexec::BoundInfo;
using symexec::BoundOrigin;

class MalformedLimitsFile : public Error {
 public:
  MalformedLimitsFile(std::size_t line, const std::string& detail)
      : Error("malformed limits file at line " + std::to_string(line) + ": " + detail),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Object-like `#define NAME <integer expression>` entries of a limits
/// header. Definitions referring to unknown identifiers are skipped.
std::map<std::string, Integer> parse_limits(std::string_view text);

/// First supported limits macro used by the program, valued from the limits
/// file when it defines it. Without any macro the bound is INT_MAX.
BoundInfo discover_upper_bound(const frontend::TranslationUnit& program,
                               const std::string& limits_path);

BoundInfo bound_for_macro(const std::string& macro, BoundOrigin origin = BoundOrigin::ProgramUsage);

}  // namespace guardfix::overflow
