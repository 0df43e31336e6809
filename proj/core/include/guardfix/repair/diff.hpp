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
#include <string_view>
#include <vector>

#include "guardfix/support/error.hpp"

namespace guardfix::repair {

/// Replacement of bytes [begin, end) of a text.
struct TextEdit {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string replacement;
};

class SpanDrift : public Error {
 public:
  using Error::Error;
};

class DiffMismatch : public Error {
 public:
  using Error::Error;
};

/// Applies non-overlapping edits; throws SpanDrift on overlap or out-of-range spans.
std::string apply_edits(std::string_view text, std::vector<TextEdit> edits);

/// Line-based unified diff with `context` lines around each change.
std::string unified_diff(std::string_view before, std::string_view after, const std::string& old_name,
                         const std::string& new_name, int context = 3);

/// Applies a unified diff, or undoes it when `reverse` is set.
std::string apply_unified_diff(std::string_view text, std::string_view diff, bool reverse = false);

/// Lines added minus lines removed.
long diff_line_delta(std::string_view diff);

}  // namespace guardfix::repair
