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

#include "guardfix/support/error.hpp"
#include "guardfix/symexec/report.hpp"

namespace guardfix::overflow {

enum class Safety { Safe, Unsafe };

class DivisorZero : public Error {
 public:
  DivisorZero() : Error("precondition divisor is zero") {}
};

/// s1 > 0 && s2 > 0 && s1 <= MAX - s2 && s1 >= -MAX - s2
Safety eval_precondition_add_const(const Integer& s1, const Integer& s2,
                                   const symexec::BoundInfo& bound);

/// s1 > 0 && s2 > 0 && s1 <= MAX / s2 && s1 >= -MAX / s2 - 1
Safety eval_precondition_mul_const(const Integer& s1, const Integer& s2,
                                   const symexec::BoundInfo& bound);

/// -isqrt(MAX) <= s1 <= isqrt(MAX)
Safety eval_precondition_square(const Integer& s1, const symexec::BoundInfo& bound);

}  // namespace guardfix::overflow
