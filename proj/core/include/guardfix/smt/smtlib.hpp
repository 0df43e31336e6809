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

#include "guardfix/smt/system.hpp"
#include "guardfix/support/error.hpp"

namespace guardfix::smt {

class SmtParseError : public Error {
 public:
  using Error::Error;
};

/// Renders an SMT-LIB v2 script: set-logic, an optional C-division helper,
/// declarations, group-commented assertions, check-sat and (when there are
/// declarations and `with_get_model`) get-model. Output is byte-stable.
std::string emit_smtlib(const ConstraintSystem& system, bool with_get_model = true);

/// Reads back a script produced by emit_smtlib, restoring group tags.
ConstraintSystem parse_smtlib(std::string_view script);

std::string emit_term(const Term& term);
std::string emit_formula(const Formula& formula);

/// SMT-LIB symbol text for a plain name, quoting with |...| when needed.
std::string quote_symbol(const std::string& symbol);

/// Minimal s-expression reader shared by the script and model parsers.
struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> items;
};
SExpr read_sexpr(std::string_view text, std::size_t& pos);
std::vector<SExpr> read_all_sexprs(std::string_view text);

}  // namespace guardfix::smt
