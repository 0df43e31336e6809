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
#include <map>
#include <optional>

#include "guardfix/smt/solver.hpp"

namespace guardfix::smt {

namespace {

struct Interval {
  std::optional<Integer> lo;
  std::optional<Integer> hi;

  bool empty() const { return lo && hi && *lo > *hi; }
  bool point() const { return lo && hi && *lo == *hi; }
};

Interval point(const Integer& v) { return {v, v}; }

Interval meet(const Interval& a, const Interval& b) {
  Interval out = a;
  if (b.lo && (!out.lo || *b.lo > *out.lo)) out.lo = b.lo;
  if (b.hi && (!out.hi || *b.hi < *out.hi)) out.hi = b.hi;
  return out;
}

using Box = std::map<std::string, Interval>;

Interval eval(const Term& t, const Box& box);

Interval corners(const Interval& a, const Interval& b, Integer (*f)(const Integer&, const Integer&)) {
  if (!a.lo || !a.hi || !b.lo || !b.hi) return {};
  Integer vals[4] = {f(*a.lo, *b.lo), f(*a.lo, *b.hi), f(*a.hi, *b.lo), f(*a.hi, *b.hi)};
  Interval out{vals[0], vals[0]};
  for (const auto& v : vals) {
    if (v < *out.lo) out.lo = v;
    if (v > *out.hi) out.hi = v;
  }
  return out;
}

Integer times(const Integer& a, const Integer& b) { return a * b; }
Integer quotient(const Integer& a, const Integer& b) { return trunc_div(a, b); }

Interval eval(const Term& t, const Box& box) {
  switch (t->op) {
    case TermOp::Var: {
      auto it = box.find(t->symbol);
      return it == box.end() ? Interval{} : it->second;
    }
    case TermOp::Const:
      return point(t->value);
    case TermOp::Neg: {
      Interval a = eval(t->args[0], box);
      Interval out;
      if (a.hi) out.lo = Integer(-*a.hi);
      if (a.lo) out.hi = Integer(-*a.lo);
      return out;
    }
    case TermOp::Add: {
      Interval a = eval(t->args[0], box), b = eval(t->args[1], box);
      Interval out;
      if (a.lo && b.lo) out.lo = Integer(*a.lo + *b.lo);
      if (a.hi && b.hi) out.hi = Integer(*a.hi + *b.hi);
      return out;
    }
    case TermOp::Sub: {
      Interval a = eval(t->args[0], box), b = eval(t->args[1], box);
      Interval out;
      if (a.lo && b.hi) out.lo = Integer(*a.lo - *b.hi);
      if (a.hi && b.lo) out.hi = Integer(*a.hi - *b.lo);
      return out;
    }
    case TermOp::Mul: {
      Interval a = eval(t->args[0], box), b = eval(t->args[1], box);
      if (structurally_equal(t->args[0], t->args[1])) {
        // Squares are non-negative even when the operand range is unbounded.
        Interval sq = corners(a, a, &times);
        if (a.lo && a.hi && *a.lo <= 0 && *a.hi >= 0) sq.lo = Integer(0);
        if (!sq.lo) sq.lo = Integer(0);
        return sq;
      }
      return corners(a, b, &times);
    }
    case TermOp::Div: {
      Interval a = eval(t->args[0], box), b = eval(t->args[1], box);
      if (!b.lo || !b.hi || (*b.lo <= 0 && *b.hi >= 0)) return {};
      return corners(a, b, &quotient);
    }
  }
  return {};
}

enum class Tri { True, False, Unknown };

Tri compare(RelOp op, const Interval& l, const Interval& r) {
  auto lt = [](const Interval& a, const Interval& b) -> Tri {
    if (a.hi && b.lo && *a.hi < *b.lo) return Tri::True;
    if (a.lo && b.hi && *a.lo >= *b.hi) return Tri::False;
    return Tri::Unknown;
  };
  auto le = [](const Interval& a, const Interval& b) -> Tri {
    if (a.hi && b.lo && *a.hi <= *b.lo) return Tri::True;
    if (a.lo && b.hi && *a.lo > *b.hi) return Tri::False;
    return Tri::Unknown;
  };
  auto flip = [](Tri t) {
    return t == Tri::True ? Tri::False : t == Tri::False ? Tri::True : Tri::Unknown;
  };
  switch (op) {
    case RelOp::Lt: return lt(l, r);
    case RelOp::Le: return le(l, r);
    case RelOp::Gt: return lt(r, l);
    case RelOp::Ge: return le(r, l);
    case RelOp::Eq: {
      if (l.point() && r.point()) return *l.lo == *r.lo ? Tri::True : Tri::False;
      if (meet(l, r).empty()) return Tri::False;
      return Tri::Unknown;
    }
    case RelOp::Ne: return flip(compare(RelOp::Eq, l, r));
  }
  return Tri::Unknown;
}

Tri judge(const Formula& f, const Box& box) {
  switch (f->op) {
    case FormulaOp::True: return Tri::True;
    case FormulaOp::False: return Tri::False;
    case FormulaOp::Rel: return compare(f->rel, eval(f->lhs, box), eval(f->rhs, box));
    case FormulaOp::Not: {
      Tri t = judge(f->args[0], box);
      return t == Tri::True ? Tri::False : t == Tri::False ? Tri::True : Tri::Unknown;
    }
    case FormulaOp::And: {
      Tri out = Tri::True;
      for (const auto& a : f->args) {
        Tri t = judge(a, box);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Unknown) out = Tri::Unknown;
      }
      return out;
    }
    case FormulaOp::Or: {
      Tri out = Tri::False;
      for (const auto& a : f->args) {
        Tri t = judge(a, box);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Unknown) out = Tri::Unknown;
      }
      return out;
    }
  }
  return Tri::Unknown;
}

// Restricts `symbol` so that `symbol op bound` can hold.
bool narrow_var(Box& box, const std::string& symbol, RelOp op, const Interval& bound) {
  Interval limit;
  switch (op) {
    case RelOp::Eq: limit = bound; break;
    case RelOp::Lt: if (bound.hi) limit.hi = Integer(*bound.hi - 1); break;
    case RelOp::Le: limit.hi = bound.hi; break;
    case RelOp::Gt: if (bound.lo) limit.lo = Integer(*bound.lo + 1); break;
    case RelOp::Ge: limit.lo = bound.lo; break;
    case RelOp::Ne: {
      const Interval& cur = box[symbol];
      if (!bound.point()) return false;
      if (cur.lo && *cur.lo == *bound.lo) limit.lo = Integer(*cur.lo + 1);
      else if (cur.hi && *cur.hi == *bound.lo) limit.hi = Integer(*cur.hi - 1);
      break;
    }
  }
  Interval& cur = box[symbol];
  Interval next = meet(cur, limit);
  bool changed = next.lo != cur.lo || next.hi != cur.hi;
  cur = next;
  return changed;
}

RelOp mirror(RelOp op) {
  switch (op) {
    case RelOp::Lt: return RelOp::Gt;
    case RelOp::Le: return RelOp::Ge;
    case RelOp::Gt: return RelOp::Lt;
    case RelOp::Ge: return RelOp::Le;
    default: return op;
  }
}

bool narrow(const Formula& f, Box& box) {
  if (f->op == FormulaOp::And) {
    bool changed = false;
    for (const auto& a : f->args) changed |= narrow(a, box);
    return changed;
  }
  if (f->op != FormulaOp::Rel) return false;
  bool changed = false;
  if (f->lhs->op == TermOp::Var) {
    changed |= narrow_var(box, f->lhs->symbol, f->rel, eval(f->rhs, box));
  }
  if (f->rhs->op == TermOp::Var) {
    changed |= narrow_var(box, f->rhs->symbol, mirror(f->rel), eval(f->lhs, box));
  }
  return changed;
}

Integer pick(const Interval& i) {
  if (i.lo && *i.lo > 0) return *i.lo;
  if (i.hi && *i.hi < 0) return *i.hi;
  return Integer(0);
}

}  // namespace

std::optional<Verdict> quick_decide(const ConstraintSystem& system) {
  Box box;
  for (const auto& d : system.declarations()) box[d] = Interval{};
  constexpr int kRounds = 16;
  for (int round = 0; round < kRounds; ++round) {
    bool changed = false;
    for (const auto& a : system.assertions()) changed |= narrow(a.formula, box);
    for (const auto& [name, iv] : box) {
      if (iv.empty()) return Verdict::unsat();
    }
    if (!changed) break;
  }
  bool all_true = true;
  for (const auto& a : system.assertions()) {
    Tri t = judge(a.formula, box);
    if (t == Tri::False) return Verdict::unsat();
    if (t == Tri::Unknown) all_true = false;
  }
  bool all_points = true;
  for (const auto& [name, iv] : box) {
    if (!iv.point()) all_points = false;
  }
  Model model;
  for (const auto& [name, iv] : box) model[name] = pick(iv);
  if (!all_true && !all_points) {
    // Definitions `v = term` are re-evaluated under the picked values.
    for (int round = 0; round < kRounds; ++round) {
      bool changed = false;
      for (const auto& a : system.assertions()) {
        const Formula& f = a.formula;
        if (f->op != FormulaOp::Rel || f->rel != RelOp::Eq || f->lhs->op != TermOp::Var) continue;
        auto v = evaluate(f->rhs, model);
        if (v && model[f->lhs->symbol] != *v) {
          model[f->lhs->symbol] = *v;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  for (const auto& a : system.assertions()) {
    auto v = evaluate(a.formula, model);
    if (!v || !*v) return std::nullopt;
  }
  return Verdict::sat(std::move(model));
}

}  // namespace guardfix::smt
