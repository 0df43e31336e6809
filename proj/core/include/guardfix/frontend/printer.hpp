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

#include "guardfix/frontend/ast.hpp"

namespace guardfix::frontend {

/// Canonical C rendering of the translation unit (four-space indentation,
/// fully parenthesized only where precedence requires).
std::string pretty_print(const TranslationUnit& unit);
std::string print_expr(const Expr& expr);
std::string print_stmt(const Stmt& stmt, int indent = 0);

/// Canonical S-expression serialization. With spans=false two parses that
/// differ only in layout serialize identically.
std::string dump_ast(const TranslationUnit& unit, bool spans = false);

}  // namespace guardfix::frontend
