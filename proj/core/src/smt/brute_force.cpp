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
#include <cstdint>
#include <map>

#include "guardfix/smt/solver.hpp"

namespace guardfix::smt {

namespace {

// Term compiled against a dense variable index for fast int64 evaluation.
struct Compiled {
  TermOp op = TermOp::Const;
  int index = -1;
  std::optional<std::int64_t> value;  // empty when the constant exceeds int64
  std::vector<Compiled> args;
};

Compiled compile(const Term& t, const std::map<std::string, int>& index) {
  Compiled c;
  c.op = t->op;
  if (t->op == TermOp::Var) c.index = index.at(t->symbol);
  if (t->op == TermOp::Const) c.value = to_int64(t->value);
  for (const auto& a : t->args) c.args.push_back(compile(a, index));
  return c;
}

enum class Fast { Ok, Undefined, Overflow };

Fast eval64(const Compiled& c, const std::vector<std::int64_t>& values, std::int64_t& out) {
  switch (c.op) {
    case TermOp::Var:
      out = values[static_cast<std::size_t>(c.index)];
      return Fast::Ok;
    case TermOp::Const:
      if (!c.value) return Fast::Overflow;
      out = *c.value;
      return Fast::Ok;
    case TermOp::Neg: {
      std::int64_t a;
      Fast r = eval64(c.args[0], values, a);
      if (r != Fast::Ok) return r;
      if (__builtin_sub_overflow(std::int64_t{0}, a, &out)) return Fast::Overflow;
      return Fast::Ok;
    }
    default:
      break;
  }
  std::int64_t a, b;
  Fast r = eval64(c.args[0], values, a);
  if (r != Fast::Ok) return r;
  r = eval64(c.args[1], values, b);
  if (r != Fast::Ok) return r;
  switch (c.op) {
    case TermOp::Add: return __builtin_add_overflow(a, b, &out) ? Fast::Overflow : Fast::Ok;
    case TermOp::Sub: return __builtin_sub_overflow(a, b, &out) ? Fast::Overflow : Fast::Ok;
    case TermOp::Mul: return __builtin_mul_overflow(a, b, &out) ? Fast::Overflow : Fast::Ok;
    case TermOp::Div:
      if (b == 0) return Fast::Undefined;
      if (a == INT64_MIN && b == -1) return Fast::Overflow;
      out = a / b;
      return Fast::Ok;
    default:
      return Fast::Overflow;
  }
}

struct Check {
  Formula formula;
  int last_index = -1;
};

class Enumerator {
 public:
  Enumerator(const ConstraintSystem& system, int width, const std::set<std::string>& unsigned_symbols)
      : names_(system.declarations()) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < names_.size(); ++i) index[names_[i]] = static_cast<int>(i);
    lo_.resize(names_.size());
    hi_.resize(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (unsigned_symbols.count(names_[i])) {
        lo_[i] = 0;
        hi_[i] = (std::int64_t{1} << width) - 1;
      } else {
        lo_[i] = -(std::int64_t{1} << (width - 1));
        hi_[i] = (std::int64_t{1} << (width - 1)) - 1;
      }
    }
    by_level_.resize(names_.size() + 1);
    for (const auto& a : system.assertions()) {
      std::set<std::string> used;
      collect_symbols(a.formula, used);
      int last = -1;
      for (const auto& s : used) last = std::max(last, index.at(s));
      by_level_[static_cast<std::size_t>(last + 1)].push_back(a.formula);
      prepare(a.formula, index);
    }
    values_.assign(names_.size(), 0);
  }

  std::optional<Model> run() {
    if (!holds_level(0)) return std::nullopt;
    if (descend(0)) {
      Model model;
      for (std::size_t i = 0; i < names_.size(); ++i) model[names_[i]] = Integer(values_[i]);
      return model;
    }
    return std::nullopt;
  }

 private:
  struct CompiledFormula {
    Compiled lhs, rhs;
  };

  void prepare(const Formula& f, const std::map<std::string, int>& index) {
    if (f->op == FormulaOp::Rel) {
      rels_[f.get()] = CompiledFormula{compile(f->lhs, index), compile(f->rhs, index)};
      return;
    }
    for (const auto& a : f->args) prepare(a, index);
  }

  std::optional<bool> holds(const Formula& f) {
    switch (f->op) {
      case FormulaOp::True: return true;
      case FormulaOp::False: return false;
      case FormulaOp::Not: {
        auto v = holds(f->args[0]);
        if (!v) return std::nullopt;
        return !*v;
      }
      case FormulaOp::And:
        for (const auto& a : f->args) {
          auto v = holds(a);
          if (!v) return std::nullopt;
          if (!*v) return false;
        }
        return true;
      case FormulaOp::Or: {
        bool undefined = false;
        for (const auto& a : f->args) {
          auto v = holds(a);
          if (!v) undefined = true;
          else if (*v) return true;
        }
        if (undefined) return std::nullopt;
        return false;
      }
      case FormulaOp::Rel:
        break;
    }
    const CompiledFormula& c = rels_.at(f.get());
    std::int64_t l, r;
    Fast fl = eval64(c.lhs, values_, l);
    Fast fr = fl == Fast::Ok ? eval64(c.rhs, values_, r) : fl;
    if (fl == Fast::Undefined || fr == Fast::Undefined) return std::nullopt;
    if (fl == Fast::Overflow || fr == Fast::Overflow) return slow(f);
    switch (f->rel) {
      case RelOp::Eq: return l == r;
      case RelOp::Ne: return l != r;
      case RelOp::Lt: return l < r;
      case RelOp::Le: return l <= r;
      case RelOp::Gt: return l > r;
      case RelOp::Ge: return l >= r;
    }
    return std::nullopt;
  }

  std::optional<bool> slow(const Formula& f) {
    Model model;
    for (std::size_t i = 0; i < names_.size(); ++i) model[names_[i]] = Integer(values_[i]);
    return evaluate(f, model);
  }

  bool holds_level(std::size_t level) {
    for (const auto& f : by_level_[level]) {
      auto v = holds(f);
      if (!v || !*v) return false;
    }
    return true;
  }

  bool descend(std::size_t i) {
    if (i == names_.size()) return true;
    for (std::int64_t v = lo_[i]; v <= hi_[i]; ++v) {
      values_[i] = v;
      if (holds_level(i + 1) && descend(i + 1)) return true;
    }
    return false;
  }

  std::vector<std::string> names_;
  std::vector<std::int64_t> lo_, hi_, values_;
  std::vector<std::vector<Formula>> by_level_;
  std::map<const FormulaNode*, CompiledFormula> rels_;
};

}  // namespace

Verdict brute_force_check(const ConstraintSystem& system, int width,
                          const std::set<std::string>& unsigned_symbols) {
  if (width < 1 || width > 16) throw SpaceTooLarge("bit width must be within 1..16");
  if (!system.well_formed()) throw Error("constraint system is not well formed");
  long double space = 1;
  for (std::size_t i = 0; i < system.declarations().size(); ++i) {
    space *= static_cast<long double>(std::int64_t{1} << width);
  }
  if (space > static_cast<long double>(std::int64_t{1} << 24)) {
    throw SpaceTooLarge("enumeration space exceeds 2^24 assignments");
  }
  Enumerator e(system, width, unsigned_symbols);
  if (auto model = e.run()) return Verdict::sat(std::move(*model));
  return Verdict::unsat();
}

}  // namespace guardfix::smt
