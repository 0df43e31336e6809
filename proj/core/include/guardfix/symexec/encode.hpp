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

#include <optional>
#include <string>

#include "guardfix/cfg/cfg.hpp"
#include "guardfix/frontend/ast.hpp"
#include "guardfix/frontend/diagnostics.hpp"
#include "guardfix/smt/solver.hpp"
#include "guardfix/symexec/state.hpp"
#include "guardfix/symexec/summary.hpp"

namespace guardfix::symexec {

class UnsupportedExpression : public cfg::PathAbandoned {
 public:
  UnsupportedExpression(const std::string& what, frontend::Span span)
      : cfg::PathAbandoned("unsupported expression: " + what + " (line " +
                           std::to_string(span.begin.line) + ")"),
        span_(span) {}
  const frontend::Span& span() const { return span_; }

 private:
  frontend::Span span_;
};

/// Raised by a terminating library call (exit, abort).
struct PathTerminated {};

/// Where an expression is evaluated: the CFG of the enclosing function (for
/// hoisted call temporaries) and the qualifier of its locals.
struct EncodeContext {
  const cfg::Cfg* cfg = nullptr;
  /// "" for the analysis root, "callee#depth." for inlined frames.
  std::string prefix;
  const SummaryRegistry* summaries = nullptr;
};

/// Store key of a program variable or field path in this frame; empty for
/// locations reached through a pointer.
std::optional<std::string> storage_name(const frontend::Expr& lvalue, const EncodeContext& ctx);

/// Integer-valued translation. May add definition constraints (fresh inputs,
/// summary results) and divisor != 0 path conditions.
smt::Term translate(const frontend::Expr& expr, PathState& state, const EncodeContext& ctx);

/// Truth-valued translation of a condition.
smt::Formula translate_condition(const frontend::Expr& expr, PathState& state,
                                 const EncodeContext& ctx);

struct EncodedStatement {
  /// Variable defined by an assignment or initialized declaration.
  std::optional<SymVar> defined;
  /// Right-hand side as written (null for ++/--).
  const frontend::Expr* rhs = nullptr;
};

/// Encodes a Decl/Assign/ExprStmt/Return node. Throws PathTerminated when a
/// terminating library call is reached.
EncodedStatement encode_statement(const frontend::Stmt& stmt, PathState& state,
                                  const EncodeContext& ctx);

/// Applies the registered summary of a library call. Returns the result term
/// for value-returning summaries.
std::optional<smt::Term> apply_summary(const frontend::Expr& call, PathState& state,
                                       const EncodeContext& ctx);

enum class Feasibility { Feasible, Infeasible };

/// Checks every unvalidated path condition of `state` on its slice.
Feasibility validate_pending(PathState& state, smt::SmtSolver& solver);

/// Adds `condition` (negated when !taken) as a path condition and validates it.
Feasibility validate_branch(PathState& state, const frontend::Expr& condition, bool taken,
                            const EncodeContext& ctx, smt::SmtSolver& solver);

/// Name of the value a callee frame returns.
std::string return_slot(const std::string& prefix);

}  // namespace guardfix::symexec
