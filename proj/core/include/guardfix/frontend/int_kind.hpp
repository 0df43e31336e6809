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

#include <array>
#include <optional>
#include <string_view>

#include "guardfix/support/integer.hpp"

namespace guardfix::frontend {

enum class IntKindId { Char, Short, Int, UInt, Int64 };

/// One of the five integer kinds the analysis understands. Bounds follow the
/// two's-complement formulas for the kind's width and signedness.
class IntKind {
 public:
  constexpr IntKind() = default;
  constexpr IntKind(IntKindId id) : id_(id) {}  // NOLINT: implicit by design of enum-like use

  constexpr IntKindId id() const { return id_; }
  std::string_view name() const;
  int width() const;
  bool is_signed() const;
  Integer max_value() const;
  Integer min_value() const;
  bool contains(const Integer& value) const {
    return value >= min_value() && value <= max_value();
  }

  /// Conversion rank used for the usual arithmetic conversions.
  int rank() const;

  friend constexpr bool operator==(IntKind a, IntKind b) { return a.id_ == b.id_; }

  static const std::array<IntKind, 5>& all();

 private:
  IntKindId id_ = IntKindId::Int;
};

/// Maps a canonical kind name ("char", "unsigned int", "int64", ...) back to a kind.
std::optional<IntKind> int_kind_from_name(std::string_view name);

/// Standard value of CHAR_MAX, SHRT_MAX, INT_MAX, LLONG_MAX or UINT_MAX.
std::optional<Integer> limit_macro_value(std::string_view name);

/// Integer promotion: char and short become int.
IntKind promote(IntKind kind);

/// Result kind of a binary arithmetic operation.
IntKind common_kind(IntKind a, IntKind b);

}  // namespace guardfix::frontend
