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
#include "support/random_systems.hpp"

namespace guardfix::testing {

using namespace guardfix::smt;

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  int choice = depth <= 0 ? pick(rng, 0, 1) : pick(rng, 0, 6);
  switch (choice) {
    case 0: return var(vars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(vars.size()) - 1))]);
    case 1: return constant(Integer(pick(rng, -130, 130)));
    case 2: return add(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    case 3: return sub(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    case 4: return mul(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    case 5: {
      int d = pick(rng, 1, 9) * (pick(rng, 0, 1) ? 1 : -1);
      return div(random_term(rng, vars, depth - 1), constant(Integer(d)));
    }
    default: return neg(random_term(rng, vars, depth - 1));
  }
}

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  int choice = depth <= 0 ? 0 : pick(rng, 0, 5);
  if (choice <= 2) {
    auto op = static_cast<RelOp>(pick(rng, 0, 5));
    return relation(op, random_term(rng, vars, 2), random_term(rng, vars, 1));
  }
  if (choice == 3) return negation(random_formula(rng, vars, depth - 1));
  std::vector<Formula> parts{random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1)};
  return choice == 4 ? conjunction(parts) : disjunction(parts);
}

}  // namespace

RandomSystem random_system(std::mt19937_64& rng, int max_vars) {
  RandomSystem rs;
  int n = pick(rng, 1, max_vars);
  rs.width = n >= 4 ? 6 : 8;
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) {
    std::string name = std::string(1, static_cast<char>('a' + i)) + "0";
    vars.push_back(name);
    rs.system.declare(name);
    if (pick(rng, 0, 3) == 0) rs.unsigned_symbols.insert(name);
  }
  int count = pick(rng, 1, 4);
  for (int i = 0; i < count; ++i) {
    GroupTag tag = i == 0 ? definition_group() : path_condition_group();
    rs.system.add(tag, random_formula(rng, vars, 2));
  }
  return rs;
}

ConstraintSystem with_domain(const RandomSystem& rs) {
  ConstraintSystem out = rs.system;
  for (const auto& name : rs.system.declarations()) {
    bool is_unsigned = rs.unsigned_symbols.count(name) > 0;
    Integer lo = is_unsigned ? Integer(0) : Integer(-(Integer(1) << (rs.width - 1)));
    Integer hi = is_unsigned ? Integer((Integer(1) << rs.width) - 1)
                             : Integer((Integer(1) << (rs.width - 1)) - 1);
    out.add(definition_group(), relation(RelOp::Ge, var(name), constant(lo)));
    out.add(definition_group(), relation(RelOp::Le, var(name), constant(hi)));
  }
  return out;
}

}  // namespace guardfix::testing
