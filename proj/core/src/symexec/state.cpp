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
#include "guardfix/symexec/state.hpp"

#include <cctype>
#include <deque>

namespace guardfix::symexec {

std::string smt_name(const std::string& base, std::uint32_t index) {
  bool plain = !base.empty() &&
               (std::isalpha(static_cast<unsigned char>(base[0])) || base[0] == '_');
  for (char c : base) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') plain = false;
  }
  if (plain && (std::isdigit(static_cast<unsigned char>(base.back())) || base.back() == '_')) {
    plain = false;
  }
  if (plain) return base + std::to_string(index);
  return base + "@" + std::to_string(index);
}

SymVar PathState::define(const std::string& base, frontend::IntKind kind) {
  std::uint32_t& next = next_index_[base];
  SymVar v{base, next++, kind, std::nullopt};
  store_[base] = v;
  by_symbol_[v.name()] = history_.size();
  history_.push_back(v);
  return v;
}

SymVar PathState::fresh(const std::string& base, frontend::IntKind kind, bool with_domain) {
  SymVar v = define(base, kind);
  if (with_domain) add(smt::definition_group(), domain_of(v));
  return v;
}

void PathState::forget(const std::string& base) { store_.erase(base); }

const SymVar* PathState::current(const std::string& base) const {
  auto it = store_.find(base);
  return it == store_.end() ? nullptr : &it->second;
}

const SymVar* PathState::lookup(const std::string& smt_symbol) const {
  auto it = by_symbol_.find(smt_symbol);
  return it == by_symbol_.end() ? nullptr : &history_[it->second];
}

std::uint32_t PathState::add(smt::GroupTag tag, smt::Formula formula) {
  Constraint c;
  c.id = static_cast<std::uint32_t>(constraints_.size());
  c.tag = tag;
  std::set<std::string> symbols;
  smt::collect_symbols(formula, symbols);
  c.symbols.assign(symbols.begin(), symbols.end());
  c.formula = std::move(formula);
  for (const auto& s : c.symbols) uses_[s].push_back(c.id);
  if (tag == smt::path_condition_group()) unvalidated_.push_back(c.id);
  constraints_.push_back(std::move(c));
  return constraints_.back().id;
}

void PathState::define_equal(SymVar& var, const smt::Term& value) {
  std::uint32_t id = add(smt::definition_group(), smt::relation(smt::RelOp::Eq, var.term(), value));
  var.defining_constraint = id;
  if (auto it = store_.find(var.base); it != store_.end() && it->second == var) {
    it->second.defining_constraint = id;
  }
  history_[by_symbol_.at(var.name())].defining_constraint = id;
}

smt::ConstraintSystem PathState::system() const {
  smt::ConstraintSystem out;
  for (const auto& c : constraints_) out.add(c.tag, c.formula);
  return out;
}

smt::ConstraintSystem PathState::slice(const std::set<std::string>& seeds) const {
  std::vector<bool> picked(constraints_.size(), false);
  std::set<std::string> visited;
  std::deque<std::string> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    std::string s = std::move(work.front());
    work.pop_front();
    if (!visited.insert(s).second) continue;
    auto it = uses_.find(s);
    if (it == uses_.end()) continue;
    for (std::uint32_t id : it->second) {
      if (picked[id]) continue;
      picked[id] = true;
      for (const auto& other : constraints_[id].symbols) {
        if (!visited.count(other)) work.push_back(other);
      }
    }
  }
  smt::ConstraintSystem out;
  for (const auto& c : constraints_) {
    if (picked[c.id] || c.symbols.empty()) out.add(c.tag, c.formula);
  }
  for (const auto& s : seeds) out.declare(s);
  return out;
}

smt::ConstraintSystem slice_for(const PathState& state, const SymVar& var) {
  if (!state.lookup(var.name())) throw UnknownSymVar("unknown symbolic variable " + var.name());
  return state.slice({var.name()});
}

smt::Formula domain_of(const SymVar& var) {
  return smt::conjunction({smt::relation(smt::RelOp::Ge, var.term(), smt::constant(var.kind.min_value())),
                           smt::relation(smt::RelOp::Le, var.term(), smt::constant(var.kind.max_value()))});
}

}  // namespace guardfix::symexec
