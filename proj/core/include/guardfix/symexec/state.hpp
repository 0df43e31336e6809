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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guardfix/frontend/int_kind.hpp"
#include "guardfix/smt/system.hpp"
#include "guardfix/support/error.hpp"

namespace guardfix::symexec {

/// SMT symbol for an SSA version: `base` + index for plain identifiers,
/// `base@index` otherwise.
std::string smt_name(const std::string& base, std::uint32_t index);

struct SymVar {
  std::string base;
  std::uint32_t index = 0;
  frontend::IntKind kind = frontend::IntKindId::Int;
  std::optional<std::uint32_t> defining_constraint;

  std::string name() const { return smt_name(base, index); }
  smt::Term term() const { return smt::var(name()); }
  friend bool operator==(const SymVar& a, const SymVar& b) {
    return a.base == b.base && a.index == b.index;
  }
};

class UnknownSymVar : public Error {
 public:
  using Error::Error;
};

struct Constraint {
  std::uint32_t id = 0;
  smt::GroupTag tag;
  smt::Formula formula;
  std::vector<std::string> symbols;
};

class PathState {
 public:
  /// Next SSA version of `base`; the store now maps `base` to it.
  SymVar define(const std::string& base, frontend::IntKind kind);
  /// Like define, plus a domain constraint lo <= v <= hi of `kind`.
  SymVar fresh(const std::string& base, frontend::IntKind kind, bool with_domain = true);
  /// Forget the current version of `base` (an uninitialized redeclaration).
  void forget(const std::string& base);

  const SymVar* current(const std::string& base) const;
  const SymVar* lookup(const std::string& smt_symbol) const;
  const std::vector<SymVar>& history() const { return history_; }

  std::uint32_t add(smt::GroupTag tag, smt::Formula formula);
  /// Defines `var` = `value` in the definition group and links the constraint.
  void define_equal(SymVar& var, const smt::Term& value);

  const std::vector<Constraint>& constraints() const { return constraints_; }
  smt::ConstraintSystem system() const;

  /// Constraints transitively connected to `seeds` through shared symbols,
  /// plus every symbol-free constraint, in original order.
  smt::ConstraintSystem slice(const std::set<std::string>& seeds) const;

  /// Path-condition constraints added but not yet checked for feasibility.
  std::vector<std::uint32_t>& unvalidated() { return unvalidated_; }

  std::uint32_t next_probe_id() { return ++probe_counter_; }

 private:
  std::map<std::string, SymVar> store_;
  std::map<std::string, std::uint32_t> next_index_;
  std::vector<SymVar> history_;
  std::map<std::string, std::size_t> by_symbol_;
  std::vector<Constraint> constraints_;
  std::map<std::string, std::vector<std::uint32_t>> uses_;
  std::vector<std::uint32_t> unvalidated_;
  std::uint32_t probe_counter_ = 0;
};

smt::ConstraintSystem slice_for(const PathState& state, const SymVar& var);

/// lo <= v <= hi for the kind's range.
smt::Formula domain_of(const SymVar& var);

}  // namespace guardfix::symexec
