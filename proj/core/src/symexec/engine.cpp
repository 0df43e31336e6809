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
#include "guardfix/symexec/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

#include "guardfix/smt/smtlib.hpp"
#include "guardfix/support/text.hpp"
#include "guardfix/symexec/encode.hpp"

namespace guardfix::symexec {

using cfg::CfgNode;
using cfg::Flow;
using cfg::WalkContext;
using frontend::StmtKind;

namespace {

std::string frame_prefix(const cfg::Cfg& cfg, int depth) {
  if (depth == 0) return "";
  return cfg.function() + "#" + std::to_string(depth) + ".";
}

struct RootOutcome {
  std::vector<BugReport> reports;
  std::vector<Diagnostic> diagnostics;
  AnalysisStats stats;
  std::vector<std::string> dumps;
};

class RootVisitor {
 public:
  RootVisitor(const frontend::TranslationUnit& unit, const SummaryRegistry& summaries,
              const std::vector<std::shared_ptr<Checker>>& checkers, smt::SmtSolver& solver,
              bool dump, RootOutcome& out)
      : unit_(unit), summaries_(summaries), checkers_(checkers), solver_(solver), dump_(dump),
        out_(out) {}

  EncodeContext context(const WalkContext& ctx) const {
    const cfg::Frame& f = ctx.frame();
    return EncodeContext{f.cfg, frame_prefix(*f.cfg, ctx.depth()), &summaries_};
  }

  Flow on_statement(PathState& state, const WalkContext& ctx, const CfgNode& node) {
    EncodeContext ectx = context(ctx);
    EncodedStatement enc;
    try {
      enc = encode_statement(*node.stmt, state, ectx);
    } catch (const PathTerminated&) {
      return Flow::Finish;
    }
    if (validate_pending(state, solver_) == Feasibility::Infeasible) {
      ++out_.stats.paths_infeasible;
      return Flow::Prune;
    }
    if (enc.defined && (node.stmt->kind == StmtKind::Assign || node.stmt->kind == StmtKind::Decl)) {
      notify(state, ctx, *node.stmt, *enc.defined, enc.rhs);
    }
    return Flow::Continue;
  }

  Flow on_branch(PathState& state, const WalkContext& ctx, const CfgNode& node, bool taken,
                 bool assume) {
    if (!assume) return Flow::Continue;
    if (!node.cond) {
      if (taken) return Flow::Continue;
      ++out_.stats.paths_infeasible;
      return Flow::Prune;
    }
    if (validate_branch(state, *node.cond, taken, context(ctx), solver_) ==
        Feasibility::Infeasible) {
      ++out_.stats.paths_infeasible;
      return Flow::Prune;
    }
    return Flow::Continue;
  }

  Flow on_call_enter(PathState& state, const WalkContext& ctx, const CfgNode& call,
                     const cfg::Cfg& callee) {
    EncodeContext caller = context(ctx);
    std::string prefix = frame_prefix(callee, ctx.depth() + 1);
    const auto& params = callee.decl().params;
    const auto& args = call.call->operands;
    std::vector<std::pair<const frontend::VarDecl*, smt::Term>> bound;
    for (std::size_t i = 0; i < params.size() && i < args.size(); ++i) {
      if (!params[i].type.is_integer() ||
          args[i]->category != frontend::ValueCategory::Integer) {
        continue;
      }
      bound.emplace_back(&params[i], translate(*args[i], state, caller));
    }
    state.forget(return_slot(prefix));
    for (const auto& p : callee.decl().params) state.forget(prefix + p.name);
    for (auto& [param, value] : bound) {
      SymVar v = state.define(prefix + param->name, param->type.int_kind);
      state.define_equal(v, value);
    }
    if (validate_pending(state, solver_) == Feasibility::Infeasible) {
      ++out_.stats.paths_infeasible;
      return Flow::Prune;
    }
    return Flow::Continue;
  }

  Flow on_call_exit(PathState& state, const WalkContext& ctx, const CfgNode& call,
                    const cfg::Cfg& callee) {
    std::string caller_prefix = frame_prefix(*ctx.frame().cfg, ctx.depth());
    std::string prefix = frame_prefix(callee, ctx.depth() + 1);
    std::string temp = caller_prefix + call.temp;
    if (const SymVar* r = state.current(return_slot(prefix))) {
      SymVar copy = *r;
      SymVar v = state.define(temp, copy.kind);
      state.define_equal(v, copy.term());
    } else {
      state.forget(temp);
    }
    return Flow::Continue;
  }

  void on_path_end(PathState& state, const cfg::ProgramPath& path) {
    ++out_.stats.paths_completed;
    if (!dump_) return;
    std::string header = "; path";
    for (bool d : path.decisions) header += d ? " T" : " F";
    out_.dumps.push_back(header + "\n" + smt::emit_smtlib(state.system(), false));
  }

  void on_abandon(PathState&, const cfg::ProgramPath& path, const cfg::PathAbandoned& why) {
    ++out_.stats.paths_abandoned;
    if (!abandon_messages_.insert(why.what()).second) return;
    std::uint32_t line = 0;
    if (!path.steps.empty()) {
      const auto& s = path.steps.back();
      line = s.cfg->node(s.node).span.begin.line;
    }
    out_.diagnostics.push_back({"abandoned-path", unit_.file_name, line, why.what()});
  }

 private:
  void notify(const PathState& state, const WalkContext& ctx, const frontend::Stmt& stmt,
              const SymVar& defined, const frontend::Expr* rhs) {
    for (std::size_t i = 0; i < checkers_.size(); ++i) {
      const Checker& checker = *checkers_[i];
      if (reported_.count({i, &stmt})) continue;
      ++out_.stats.notifications;
      SiteContext site{state, stmt, defined, rhs, unit_, ctx.frame().cfg->function(),
                       ctx.path.decisions, solver_};
      auto report = checker.on_site(site, out_.diagnostics);
      if (!report) continue;
      report->checker_id = checker.id();
      report->stmt = &stmt;
      reported_.insert({i, &stmt});
      out_.reports.push_back(std::move(*report));
    }
  }

  const frontend::TranslationUnit& unit_;
  const SummaryRegistry& summaries_;
  const std::vector<std::shared_ptr<Checker>>& checkers_;
  smt::SmtSolver& solver_;
  bool dump_;
  RootOutcome& out_;
  std::set<std::pair<std::size_t, const frontend::Stmt*>> reported_;
  std::set<std::string> abandon_messages_;
};

PathState initial_state(const frontend::TranslationUnit& unit, const cfg::Cfg& root,
                        const SummaryRegistry& summaries) {
  PathState state;
  EncodeContext ctx{&root, "", &summaries};
  for (const auto& item : unit.items) {
    if (item.kind != frontend::ItemKind::Global || !item.global.type.is_integer()) continue;
    smt::Term value = item.global.init ? translate(*item.global.init, state, ctx)
                                       : smt::constant(0);
    SymVar v = state.define(item.global.name, item.global.type.int_kind);
    state.define_equal(v, value);
  }
  state.unvalidated().clear();
  return state;
}

}  // namespace

Engine::Engine(EngineOptions options, SummaryRegistry summaries)
    : options_(std::move(options)), summaries_(std::move(summaries)) {
  if (options_.workers < 1) options_.workers = 1;
}

Engine::~Engine() = default;

void Engine::register_checker(std::shared_ptr<Checker> checker) {
  checkers_.push_back(std::move(checker));
}

smt::SmtSolver& Engine::solver_for(std::size_t worker) {
  std::lock_guard<std::mutex> lock(pool_mutex_);
  while (solvers_.size() <= worker) {
    solvers_.push_back(std::make_unique<smt::SmtSolver>(options_.solver));
  }
  return *solvers_[worker];
}

AnalysisResult Engine::analyze(std::shared_ptr<const frontend::TranslationUnit> unit) {
  auto start = std::chrono::steady_clock::now();
  for (const auto& c : checkers_) c->begin_unit(*unit);
  cfg::CfgSet cfgs(unit);
  std::vector<const cfg::Cfg*> roots = cfgs.roots();
  std::vector<RootOutcome> outcomes(roots.size());
  std::vector<std::exception_ptr> failures(roots.size());

  cfg::WalkOptions walk = options_.walk;
  walk.record_steps = true;
  std::atomic<std::size_t> next{0};
  auto work = [&](std::size_t worker) {
    smt::SmtSolver& solver = solver_for(worker);
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= roots.size()) break;
      try {
        RootVisitor visitor(*unit, summaries_, checkers_, solver, options_.dump_paths, outcomes[i]);
        cfg::walk_paths(cfgs, *roots[i], walk, initial_state(*unit, *roots[i], summaries_), visitor);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(options_.workers),
                                              std::max<std::size_t>(roots.size(), 1));
  std::vector<std::uint64_t> queries_before, calls_before;
  for (std::size_t w = 0; w < workers; ++w) {
    queries_before.push_back(solver_for(w).stats().queries);
    calls_before.push_back(solver_for(w).stats().subprocess_calls);
  }
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  AnalysisResult result;
  std::set<std::pair<std::string, const frontend::Stmt*>> seen;
  for (auto& o : outcomes) {
    for (auto& r : o.reports) {
      if (!seen.insert({r.checker_id, r.stmt}).second) continue;
      result.reports.push_back(std::move(r));
    }
    for (auto& d : o.diagnostics) result.diagnostics.push_back(std::move(d));
    for (auto& d : o.dumps) result.path_dumps.push_back(std::move(d));
    result.stats.paths_completed += o.stats.paths_completed;
    result.stats.paths_infeasible += o.stats.paths_infeasible;
    result.stats.paths_abandoned += o.stats.paths_abandoned;
    result.stats.notifications += o.stats.notifications;
  }
  for (std::size_t w = 0; w < workers; ++w) {
    result.stats.solver_queries += solver_for(w).stats().queries - queries_before[w];
    result.stats.subprocess_calls += solver_for(w).stats().subprocess_calls - calls_before[w];
  }
  finalize_reports(result.reports,
                   options_.id_stamp.empty() ? default_id_stamp(unit->source) : options_.id_stamp);
  result.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string default_id_stamp(std::string_view text) { return to_hex(fnv1a(text), 12); }

void finalize_reports(std::vector<BugReport>& reports, const std::string& stamp) {
  std::stable_sort(reports.begin(), reports.end(), [](const BugReport& a, const BugReport& b) {
    return std::tie(a.file, a.line, a.column, a.path, a.checker_id) <
           std::tie(b.file, b.line, b.column, b.path, b.checker_id);
  });
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].problem_id = stamp + "-" + std::to_string(i + 1) + "-" + reports[i].checker_id;
  }
}

}  // namespace guardfix::symexec
