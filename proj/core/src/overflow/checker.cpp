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
#include "guardfix/overflow/checker.hpp"

#include "guardfix/overflow/bound.hpp"

namespace guardfix::overflow {

using frontend::ExprKind;

bool is_checked_site(const frontend::Stmt& stmt, const frontend::Expr* rhs) {
  if (stmt.kind == frontend::StmtKind::Assign && stmt.assign_op != frontend::AssignOp::Assign) {
    return true;
  }
  if (!rhs) return false;
  if (rhs->kind == ExprKind::Binary) return frontend::is_arithmetic(rhs->binary_op);
  if (rhs->kind == ExprKind::Unary && rhs->unary_op == frontend::UnaryOp::Neg) {
    return !rhs->operands.empty() && rhs->operands[0]->kind != ExprKind::IntLiteral;
  }
  return false;
}

smt::Formula probe_formula(const std::string& symbol, const symexec::BoundInfo& bound) {
  smt::Term v = smt::var(symbol);
  return smt::disjunction({smt::relation(smt::RelOp::Gt, v, smt::constant(bound.upper_value)),
                           smt::relation(smt::RelOp::Lt, v, smt::constant(bound.lower_value))});
}

namespace {

std::string strip_frame(const std::string& base) {
  auto hash = base.find('#');
  if (hash == std::string::npos) return base;
  auto dot = base.find('.', hash);
  return dot == std::string::npos ? base : base.substr(dot + 1);
}

}  // namespace

std::optional<symexec::BugReport> check_assignment_site(const symexec::SiteContext& site,
                                                        const symexec::BoundInfo& bound,
                                                        std::vector<symexec::Diagnostic>& diagnostics) {
  if (!is_checked_site(site.stmt, site.rhs)) return std::nullopt;
  const std::uint32_t probe_id = 1;
  smt::ConstraintSystem system = symexec::slice_for(site.state, site.defined);
  const std::string symbol = site.defined.name();
  system.add({smt::GroupKind::Probe, probe_id}, probe_formula(symbol, bound));

  smt::Verdict verdict = site.solver.check_sat(system);
  if (verdict.kind == smt::Verdict::Kind::Unsat) return std::nullopt;
  if (verdict.kind == smt::Verdict::Kind::Unknown) {
    diagnostics.push_back({"unconfirmed", site.unit.file_name, site.stmt.span.begin.line,
                           "overflow of " + strip_frame(site.defined.base) + " undecided: " +
                               verdict.reason});
    return std::nullopt;
  }

  symexec::BugReport r;
  r.file = site.unit.file_name;
  r.function = site.function;
  r.line = site.stmt.span.begin.line;
  r.column = site.stmt.span.begin.column;
  r.begin_offset = site.stmt.span.begin.offset;
  r.end_offset = site.stmt.span.end.offset;
  r.statement = std::string(site.unit.text(site.stmt.span));
  r.variable = symbol;
  r.variable_base = strip_frame(site.defined.base);
  r.variable_kind = std::string(site.defined.kind.name());
  r.slice = std::move(system);
  r.probe_group = probe_id;
  r.bound = bound;
  r.path = site.path;
  r.witness = verdict.model;
  auto value = verdict.model.find(symbol);
  r.direction = value != verdict.model.end() && value->second < bound.lower_value ? "underflow"
                                                                                 : "overflow";
  r.stmt = &site.stmt;
  return r;
}

OverflowChecker::OverflowChecker(std::string limits_path, std::string id)
    : limits_path_(std::move(limits_path)), id_(std::move(id)) {}

void OverflowChecker::begin_unit(const frontend::TranslationUnit& unit) {
  bound_ = fixed_ ? *fixed_ : discover_upper_bound(unit, limits_path_);
}

std::optional<symexec::BugReport> OverflowChecker::on_site(
    const symexec::SiteContext& site, std::vector<symexec::Diagnostic>& diagnostics) const {
  auto report = check_assignment_site(site, bound_, diagnostics);
  if (report) report->checker_id = id_;
  return report;
}

}  // namespace guardfix::overflow
