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
#include "guardfix/smt/system.hpp"

#include <functional>
#include <set>

namespace guardfix::smt {

std::string GroupTag::str() const {
  switch (kind) {
    case GroupKind::Definition: return "definition";
    case GroupKind::PathCondition: return "path-condition";
    case GroupKind::Probe: return "probe#" + std::to_string(id);
    case GroupKind::Guard: return "guard#" + std::to_string(id);
  }
  return "definition";
}

std::optional<GroupTag> GroupTag::parse(std::string_view text) {
  if (text == "definition") return definition_group();
  if (text == "path-condition") return path_condition_group();
  auto numbered = [&](std::string_view prefix, GroupKind kind) -> std::optional<GroupTag> {
    if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
    std::string_view digits = text.substr(prefix.size());
    if (digits.empty()) return std::nullopt;
    std::uint32_t id = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') return std::nullopt;
      id = id * 10 + static_cast<std::uint32_t>(c - '0');
    }
    return GroupTag{kind, id};
  };
  if (auto t = numbered("probe#", GroupKind::Probe)) return t;
  return numbered("guard#", GroupKind::Guard);
}

void ConstraintSystem::declare(const std::string& symbol) {
  if (!is_declared(symbol)) declarations_.push_back(symbol);
}

bool ConstraintSystem::is_declared(const std::string& symbol) const {
  for (const auto& d : declarations_) {
    if (d == symbol) return true;
  }
  return false;
}

void ConstraintSystem::add(GroupTag tag, Formula formula) {
  std::set<std::string> symbols;
  collect_symbols(formula, symbols);
  // Keep first-use order within the formula rather than lexical order.
  std::vector<std::string> ordered;
  std::function<void(const Term&)> walk_term = [&](const Term& t) {
    if (t->op == TermOp::Var) {
      ordered.push_back(t->symbol);
      return;
    }
    for (const auto& a : t->args) walk_term(a);
  };
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    if (f->op == FormulaOp::Rel) {
      walk_term(f->lhs);
      walk_term(f->rhs);
      return;
    }
    for (const auto& a : f->args) walk(a);
  };
  walk(formula);
  for (const auto& s : ordered) declare(s);
  assertions_.push_back({tag, std::move(formula)});
}

ConstraintSystem ConstraintSystem::without_group(const GroupTag& tag) const {
  ConstraintSystem out;
  out.declarations_ = declarations_;
  for (const auto& a : assertions_) {
    if (!(a.tag == tag)) out.assertions_.push_back(a);
  }
  return out;
}

ConstraintSystem ConstraintSystem::with(const ConstraintSystem& other) const {
  ConstraintSystem out = *this;
  for (const auto& d : other.declarations_) out.declare(d);
  for (const auto& a : other.assertions_) out.assertions_.push_back(a);
  return out;
}

bool ConstraintSystem::has_group(const GroupTag& tag) const {
  for (const auto& a : assertions_) {
    if (a.tag == tag) return true;
  }
  return false;
}

std::vector<Formula> ConstraintSystem::group(const GroupTag& tag) const {
  std::vector<Formula> out;
  for (const auto& a : assertions_) {
    if (a.tag == tag) out.push_back(a.formula);
  }
  return out;
}

bool ConstraintSystem::well_formed() const {
  std::set<std::string> declared(declarations_.begin(), declarations_.end());
  for (const auto& a : assertions_) {
    std::set<std::string> used;
    collect_symbols(a.formula, used);
    for (const auto& s : used) {
      if (!declared.count(s)) return false;
    }
  }
  return true;
}

bool ConstraintSystem::uses_division() const {
  for (const auto& a : assertions_) {
    if (contains_division(a.formula)) return true;
  }
  return false;
}

}  // namespace guardfix::smt
