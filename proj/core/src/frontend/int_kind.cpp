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
#include "guardfix/frontend/int_kind.hpp"

namespace guardfix::frontend {

std::string_view IntKind::name() const {
  switch (id_) {
    case IntKindId::Char: return "char";
    case IntKindId::Short: return "short";
    case IntKindId::Int: return "int";
    case IntKindId::UInt: return "unsigned int";
    case IntKindId::Int64: return "int64";
  }
  return "int";
}

int IntKind::width() const {
  switch (id_) {
    case IntKindId::Char: return 8;
    case IntKindId::Short: return 16;
    case IntKindId::Int:
    case IntKindId::UInt: return 32;
    case IntKindId::Int64: return 64;
  }
  return 32;
}

bool IntKind::is_signed() const { return id_ != IntKindId::UInt; }

Integer IntKind::max_value() const {
  const Integer one = 1;
  if (is_signed()) return (one << (width() - 1)) - 1;
  return (one << width()) - 1;
}

Integer IntKind::min_value() const {
  if (!is_signed()) return 0;
  const Integer one = 1;
  return -(one << (width() - 1));
}

int IntKind::rank() const {
  switch (id_) {
    case IntKindId::Char: return 0;
    case IntKindId::Short: return 1;
    case IntKindId::Int: return 2;
    case IntKindId::UInt: return 3;
    case IntKindId::Int64: return 4;
  }
  return 2;
}

const std::array<IntKind, 5>& IntKind::all() {
  static const std::array<IntKind, 5> kinds = {IntKindId::Char, IntKindId::Short, IntKindId::Int,
                                               IntKindId::UInt, IntKindId::Int64};
  return kinds;
}

std::optional<IntKind> int_kind_from_name(std::string_view name) {
  for (IntKind kind : IntKind::all()) {
    if (kind.name() == name) return kind;
  }
  return std::nullopt;
}

IntKind promote(IntKind kind) {
  if (kind.rank() < IntKind(IntKindId::Int).rank()) return IntKindId::Int;
  return kind;
}

IntKind common_kind(IntKind a, IntKind b) {
  a = promote(a);
  b = promote(b);
  return a.rank() >= b.rank() ? a : b;
}

std::optional<Integer> limit_macro_value(std::string_view name) {
  if (name == "CHAR_MAX") return IntKind(IntKindId::Char).max_value();
  if (name == "SHRT_MAX") return IntKind(IntKindId::Short).max_value();
  if (name == "INT_MAX") return IntKind(IntKindId::Int).max_value();
  if (name == "LLONG_MAX") return IntKind(IntKindId::Int64).max_value();
  if (name == "UINT_MAX") return IntKind(IntKindId::UInt).max_value();
  return std::nullopt;
}

}  // namespace guardfix::frontend
