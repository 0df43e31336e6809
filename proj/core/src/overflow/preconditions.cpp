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
#include "guardfix/overflow/preconditions.hpp"

namespace guardfix::overflow {

Safety eval_precondition_add_const(const Integer& s1, const Integer& s2,
                                   const symexec::BoundInfo& bound) {
  const Integer& max = bound.upper_value;
  bool safe = s1 > 0 && s2 > 0 && s1 <= max - s2 && s1 >= -max - s2;
  return safe ? Safety::Safe : Safety::Unsafe;
}

Safety eval_precondition_mul_const(const Integer& s1, const Integer& s2,
                                   const symexec::BoundInfo& bound) {
  if (s2 == 0) throw DivisorZero();
  const Integer& max = bound.upper_value;
  bool safe = s1 > 0 && s2 > 0 && s1 <= trunc_div(max, s2) && s1 >= trunc_div(-max, s2) - 1;
  return safe ? Safety::Safe : Safety::Unsafe;
}

Safety eval_precondition_square(const Integer& s1, const symexec::BoundInfo& bound) {
  Integer root = isqrt(bound.upper_value);
  return s1 >= -root && s1 <= root ? Safety::Safe : Safety::Unsafe;
}

}  // namespace guardfix::overflow
