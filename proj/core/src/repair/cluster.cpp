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
#include "guardfix/repair/cluster.hpp"

#include <functional>

namespace guardfix::repair {

namespace {

const frontend::Stmt* find_stmt(const frontend::Stmt* s, std::uint32_t begin, std::uint32_t end) {
  if (!s) return nullptr;
  if (s->span.begin.offset == begin && s->span.end.offset == end &&
      (s->kind == frontend::StmtKind::Assign || s->kind == frontend::StmtKind::Decl)) {
    return s;
  }
  for (const frontend::Stmt* child : {s->init.get(), s->then_branch.get(), s->else_branch.get(),
                                      s->body.get(), s->step.get()}) {
    if (auto found = find_stmt(child, begin, end)) return found;
  }
  for (const auto& c : s->children) {
    if (auto found = find_stmt(c.get(), begin, end)) return found;
  }
  return nullptr;
}

}  // namespace

BugCluster cluster_bug(const symexec::BugReport& report, const frontend::TranslationUnit& unit) {
  if (report.end_offset > unit.source.size() ||
      unit.source.compare(report.begin_offset, report.end_offset - report.begin_offset, report.statement) != 0) {
    throw StaleState("statement of " + report.problem_id + " is no longer at its reported span");
  }
  const frontend::Stmt* stmt = nullptr;
  for (const auto& item : unit.items) {
    if (item.kind != frontend::ItemKind::Function) continue;
    if ((stmt = find_stmt(item.function.body.get(), report.begin_offset, report.end_offset))) break;
  }
  if (!stmt) throw StaleState("no assignment at the span of " + report.problem_id);
  if (!report.slice.is_declared(report.variable)) {
    throw StaleState("detecting variable " + report.variable + " missing from the slice");
  }

  BugCluster c;
  c.report = report;
  c.stmt = stmt;
  c.detecting = report.variable;
  c.slice = report.slice;
  c.bound = report.bound;
  for (const auto& sym : report.slice.declarations()) {
    if (sym != report.variable) c.dependencies.push_back(sym);
  }
  return c;
}

std::vector<std::string> select_constraint_vars(const BugCluster& cluster) { return {cluster.detecting}; }

GuardGroup reconstrain(const BugCluster& cluster, const std::vector<std::string>& vars) {
  GuardGroup g;
  std::uint32_t id = 1;
  while (cluster.slice.has_group({smt::GroupKind::Guard, id})) ++id;
  g.tag = {smt::GroupKind::Guard, id};
  for (const auto& v : vars) {
    g.formulas.push_back(smt::relation(smt::RelOp::Le, smt::var(v), smt::constant(cluster.bound.upper_value)));
    g.formulas.push_back(smt::relation(smt::RelOp::Ge, smt::var(v), smt::constant(cluster.bound.lower_value)));
  }
  return g;
}

ConstraintCheckResult build_and_check_new_system(const BugCluster& cluster, const GuardGroup& guard,
                                                 smt::SmtSolver& solver) {
  smt::GroupTag probe{smt::GroupKind::Probe, cluster.report.probe_group};
  if (!cluster.slice.has_group(probe)) throw StaleState("detection slice lost its probe group");
  smt::ConstraintSystem guarded = cluster.slice.without_group(probe);
  for (const auto& f : guard.formulas) guarded.add(guard.tag, f);
  smt::ConstraintSystem with_probe = guarded;
  for (const auto& f : cluster.slice.group(probe)) with_probe.add(probe, f);

  ConstraintCheckResult r;
  r.with_probe = solver.check_sat(with_probe).kind;
  r.guard_only = solver.check_sat(guarded).kind;
  if (r.with_probe != smt::Verdict::Kind::Unsat) {
    r.reason = "overflow still possible under the guard (" + smt::to_string(r.with_probe) + ")";
  } else if (r.guard_only != smt::Verdict::Kind::Sat) {
    r.reason = "guarded path is infeasible (" + smt::to_string(r.guard_only) + ")";
  } else {
    r.outcome = ConstraintCheck::Validated;
  }
  return r;
}

std::string determine_bug_type(const std::string& problem_id, const std::set<std::string>& known) {
  auto first = problem_id.find('-');
  auto last = problem_id.rfind('-');
  if (first == std::string::npos || first == last || last + 1 >= problem_id.size()) {
    throw UnknownChecker(problem_id);
  }
  std::string id = problem_id.substr(last + 1);
  if (!known.count(id)) throw UnknownChecker(problem_id);
  return id;
}

}  // namespace guardfix::repair
