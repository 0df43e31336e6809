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

#include <string>
#include <string_view>
#include <vector>

#include "guardfix/frontend/ast.hpp"

namespace guardfix::frontend {

enum class TokenKind {
  Identifier,
  Keyword,
  LimitMacro,
  IntLiteral,
  CharLiteral,
  StringLiteral,
  Punct,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  Span span;
};

/// Splits source text into tokens. Comments and `#include` lines are skipped;
/// any other preprocessor directive is rejected.
std::vector<Token> tokenize(std::string_view source, std::string_view file_name);

/// The five limits macros recognised as dedicated tokens.
bool is_limit_macro(std::string_view name);

}  // namespace guardfix::frontend
