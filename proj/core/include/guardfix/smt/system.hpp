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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guardfix/smt/term.hpp"

namespace guardfix::smt {

enum class GroupKind { Definition, PathCondition, Probe, Guard };

/// Tag of a constraint block. Probe and guard groups carry an id so a single
/// block can be removed without disturbing the others.
struct GroupTag {
  GroupKind kind = GroupKind::Definition;
  std::uint32_t id = 0;

  std::string str() const;
  static std::optional<GroupTag> parse(std::string_view text);

  friend bool operator==(const GroupTag&, const GroupTag&) = default;
};

inline GroupTag definition_group() { return {GroupKind::Definition, 0}; }
inline GroupTag path_condition_group() { return {GroupKind::PathCondition, 0}; }

struct Assertion {
  GroupTag tag;
  Formula formula;
};

/// Solver-ready set of integer constraints. Declarations keep first-use order;
/// assertions keep insertion order so emission is byte-stable.
class ConstraintSystem {
 public:
  void declare(const std::string& symbol);
  bool is_declared(const std::string& symbol) const;

  /// Declares any undeclared symbol of `formula` and appends it.
  void add(GroupTag tag, Formula formula);

  /// Copy with every assertion of `tag` removed. Declarations are kept.
  ConstraintSystem without_group(const GroupTag& tag) const;
  /// Copy with `other`'s assertions appended.
  ConstraintSystem with(const ConstraintSystem& other) const;
  bool has_group(const GroupTag& tag) const;
  std::vector<Formula> group(const GroupTag& tag) const;

  /// Every symbol used by an assertion is declared.
  bool well_formed() const;
  bool uses_division() const;
  bool empty() const { return assertions_.empty() && declarations_.empty(); }

  const std::vector<std::string>& declarations() const { return declarations_; }
  const std::vector<Assertion>& assertions() const { return assertions_; }

 private:
  std::vector<std::string> declarations_;
  std::vector<Assertion> assertions_;
};

}  // namespace guardfix::smt
