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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "guardfix/support/integer.hpp"

namespace guardfix::smt {

enum class TermOp { Var, Const, Add, Sub, Mul, Div, Neg };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

/// Integer term. Div is C division (truncation toward zero).
struct TermNode {
  TermOp op = TermOp::Const;
  std::string symbol;  // Var
  Integer value;       // Const
  std::vector<Term> args;
};

Term var(std::string symbol);
Term constant(Integer value);
Term add(Term a, Term b);
Term sub(Term a, Term b);
Term mul(Term a, Term b);
Term div(Term a, Term b);
Term neg(Term a);

enum class RelOp { Eq, Ne, Lt, Le, Gt, Ge };
enum class FormulaOp { Rel, And, Or, Not, True, False };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaOp op = FormulaOp::True;
  RelOp rel = RelOp::Eq;
  Term lhs;
  Term rhs;
  std::vector<Formula> args;
};

Formula relation(RelOp op, Term lhs, Term rhs);
Formula conjunction(std::vector<Formula> parts);
Formula disjunction(std::vector<Formula> parts);
Formula negation(Formula f);
Formula truth();
Formula falsity();

RelOp negate(RelOp op);

/// Symbol -> value. Missing symbols make evaluation fail.
using Model = std::map<std::string, Integer>;

/// nullopt when a symbol is unbound or a division by zero occurs.
std::optional<Integer> evaluate(const Term& term, const Model& model);
std::optional<bool> evaluate(const Formula& formula, const Model& model);

void collect_symbols(const Term& term, std::set<std::string>& out);
void collect_symbols(const Formula& formula, std::set<std::string>& out);
bool contains_division(const Term& term);
bool contains_division(const Formula& formula);

bool structurally_equal(const Term& a, const Term& b);
bool structurally_equal(const Formula& a, const Formula& b);

}  // namespace guardfix::smt
