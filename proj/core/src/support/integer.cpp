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
#include "guardfix/support/integer.hpp"

#include <cctype>
#include <limits>

namespace guardfix {

std::string to_string(const Integer& value) { return value.str(); }

std::optional<Integer> parse_integer(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) return std::nullopt;
  Integer result = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    result = result * 10 + (c - '0');
  }
  return negative ? Integer(-result) : result;
}

Integer isqrt(const Integer& value) {
  if (value < 0) throw std::domain_error("isqrt of negative value");
  return boost::multiprecision::sqrt(value);
}

Integer trunc_div(const Integer& dividend, const Integer& divisor) {
  // cpp_int division truncates toward zero, like C.
  return dividend / divisor;
}

Integer floor_div(const Integer& dividend, const Integer& divisor) {
  Integer q = dividend / divisor;
  if ((dividend % divisor != 0) && ((dividend < 0) != (divisor < 0))) q -= 1;
  return q;
}

Integer ceil_div(const Integer& dividend, const Integer& divisor) {
  Integer q = dividend / divisor;
  if ((dividend % divisor != 0) && ((dividend < 0) == (divisor < 0))) q += 1;
  return q;
}

std::optional<std::int64_t> to_int64(const Integer& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace guardfix
