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

#include <cstdint>
#include <optional>
#include <string_view>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace guardfix {

/// Arbitrary-precision mathematical integer. All analysis arithmetic happens
/// in this domain; machine wrap-around is never modeled.
using Integer = boost::multiprecision::cpp_int;

std::string to_string(const Integer& value);

/// Parses an optionally signed decimal string. Returns nullopt on junk.
std::optional<Integer> parse_integer(std::string_view text);

/// Floor of the square root for value >= 0.
Integer isqrt(const Integer& value);

/// Division rounding toward negative infinity. divisor != 0.
Integer floor_div(const Integer& dividend, const Integer& divisor);

/// Division rounding toward positive infinity. divisor != 0.
Integer ceil_div(const Integer& dividend, const Integer& divisor);

/// C semantics: truncation toward zero. divisor != 0.
Integer trunc_div(const Integer& dividend, const Integer& divisor);

std::optional<std::int64_t> to_int64(const Integer& value);

}  // namespace guardfix
