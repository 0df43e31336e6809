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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "guardfix/frontend/ast.hpp"
#include "guardfix/frontend/diagnostics.hpp"

namespace guardfix::frontend {

/// Parses and type-annotates a C subset translation unit. Throws SyntaxError,
/// UnsupportedConstruct or SemanticError on the first problem found.
std::shared_ptr<const TranslationUnit> parse_translation_unit(std::string_view source_text,
                                                              std::string_view file_name);

/// Returns the leaf integer kind of a field access path such as
/// {"s", "inner", "v"}. The first element names a variable, looked up among
/// the locals of `function` (when given) and then among globals.
IntKind resolve_field_type(const TranslationUnit& ast, const std::vector<std::string>& access_path,
                           std::string_view function = {});

/// Same walk starting from a struct layout; `fields` excludes the variable.
IntKind resolve_field_type(const StructLayout& layout, const std::vector<std::string>& fields);

}  // namespace guardfix::frontend
