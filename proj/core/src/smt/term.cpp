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
#include "guardfix/smt/term.hpp"

namespace guardfix::smt {

namespace {

Term make(TermOp op, std::vector<Term> args) {
  auto node = std::make_shared<TermNode>();
  node->op = op;
  node->args = std::move(args);
  return node;
}

}  // namespace

Term var(std::string symbol) {
  auto node = std::make_shared<TermNode>();
  node->op = TermOp::Var;
  node->symbol = std::move(symbol);
  return node;
}

Term constant(Integer value) {
  auto node = std::make_shared<TermNode>();
  node->op = TermOp::Const;
  node->value = std::move(value);
  return node;
}

Term add(Term a, Term b) { return make(TermOp::Add, {std::move(a), std::move(b)}); }
Term sub(Term a, Term b) { return make(TermOp::Sub, {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return make(TermOp::Mul, {std::move(a), std::move(b)}); }
Term div(Term a, Term b) { return make(TermOp::Div, {std::move(a), std::move(b)}); }
Term neg(Term a) { return make(TermOp::Neg, {std::move(a)}); }

Formula relation(RelOp op, Term lhs, Term rhs) {
  auto node = std::make_shared<FormulaNode>();
  node->op = FormulaOp::Rel;
  node->rel = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

namespace {

Formula make_nary(FormulaOp op, std::vector<Formula> parts) {
  auto node = std::make_shared<FormulaNode>();
  node->op = op;
  node->args = std::move(parts);
  return node;
}

}  // namespace

Formula conjunction(std::vector<Formula> parts) {
  if (parts.size() == 1) return parts.front();
  if (parts.empty()) return truth();
  return make_nary(FormulaOp::And, std::move(parts));
}

Formula disjunction(std::vector<Formula> parts) {
  if (parts.size() == 1) return parts.front();
  if (parts.empty()) return falsity();
  return make_nary(FormulaOp::Or, std::move(parts));
}

Formula negation(Formula f) { return make_nary(FormulaOp::Not, {std::move(f)}); }

Formula truth() {
  static const Formula t = make_nary(FormulaOp::True, {});
  return t;
}

Formula falsity() {
  static const Formula f = make_nary(FormulaOp::False, {});
  return f;
}

RelOp negate(RelOp op) {
  switch (op) {
    case RelOp::Eq: return RelOp::Ne;
    case RelOp::Ne: return RelOp::Eq;
    case RelOp::Lt: return RelOp::Ge;
    case RelOp::Le: return RelOp::Gt;
    case RelOp::Gt: return RelOp::Le;
    case RelOp::Ge: return RelOp::Lt;
  }
  return RelOp::Eq;
}

std::optional<Integer> evaluate(const Term& term, const Model& model) {
  switch (term->op) {
    case TermOp::Var: {
      auto it = model.find(term->symbol);
      if (it == model.end()) return std::nullopt;
      return it->second;
    }
    case TermOp::Const:
      return term->value;
    case TermOp::Neg: {
      auto a = evaluate(term->args[0], model);
      if (!a) return std::nullopt;
      return Integer(-*a);
    }
    default:
      break;
  }
  auto a = evaluate(term->args[0], model);
  if (!a) return std::nullopt;
  auto b = evaluate(term->args[1], model);
  if (!b) return std::nullopt;
  switch (term->op) {
    case TermOp::Add: return Integer(*a + *b);
    case TermOp::Sub: return Integer(*a - *b);
    case TermOp::Mul: return Integer(*a * *b);
    case TermOp::Div:
      if (*b == 0) return std::nullopt;
      return trunc_div(*a, *b);
    default: return std::nullopt;
  }
}

std::optional<bool> evaluate(const Formula& formula, const Model& model) {
  switch (formula->op) {
    case FormulaOp::True: return true;
    case FormulaOp::False: return false;
    case FormulaOp::Rel: {
      auto l = evaluate(formula->lhs, model);
      auto r = evaluate(formula->rhs, model);
      if (!l || !r) return std::nullopt;
      switch (formula->rel) {
        case RelOp::Eq: return *l == *r;
        case RelOp::Ne: return *l != *r;
        case RelOp::Lt: return *l < *r;
        case RelOp::Le: return *l <= *r;
        case RelOp::Gt: return *l > *r;
        case RelOp::Ge: return *l >= *r;
      }
      return std::nullopt;
    }
    case FormulaOp::Not: {
      auto v = evaluate(formula->args[0], model);
      if (!v) return std::nullopt;
      return !*v;
    }
    case FormulaOp::And: {
      for (const auto& part : formula->args) {
        auto v = evaluate(part, model);
        if (!v) return std::nullopt;
        if (!*v) return false;
      }
      return true;
    }
    case FormulaOp::Or: {
      bool undefined = false;
      for (const auto& part : formula->args) {
        auto v = evaluate(part, model);
        if (!v) {
          undefined = true;
        } else if (*v) {
          return true;
        }
      }
      if (undefined) return std::nullopt;
      return false;
    }
  }
  return std::nullopt;
}

void collect_symbols(const Term& term, std::set<std::string>& out) {
  if (term->op == TermOp::Var) {
    out.insert(term->symbol);
    return;
  }
  for (const auto& a : term->args) collect_symbols(a, out);
}

void collect_symbols(const Formula& formula, std::set<std::string>& out) {
  if (formula->op == FormulaOp::Rel) {
    collect_symbols(formula->lhs, out);
    collect_symbols(formula->rhs, out);
    return;
  }
  for (const auto& a : formula->args) collect_symbols(a, out);
}

bool contains_division(const Term& term) {
  if (term->op == TermOp::Div) return true;
  for (const auto& a : term->args) {
    if (contains_division(a)) return true;
  }
  return false;
}

bool contains_division(const Formula& formula) {
  if (formula->op == FormulaOp::Rel) {
    return contains_division(formula->lhs) || contains_division(formula->rhs);
  }
  for (const auto& a : formula->args) {
    if (contains_division(a)) return true;
  }
  return false;
}

bool structurally_equal(const Term& a, const Term& b) {
  if (a->op != b->op || a->symbol != b->symbol || a->value != b->value ||
      a->args.size() != b->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a->op != b->op || a->args.size() != b->args.size()) return false;
  if (a->op == FormulaOp::Rel) {
    return a->rel == b->rel && structurally_equal(a->lhs, b->lhs) &&
           structurally_equal(a->rhs, b->rhs);
  }
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!structurally_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

}  // namespace guardfix::smt
