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
#include "guardfix/service/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>

#include "guardfix/frontend/diagnostics.hpp"
#include "guardfix/frontend/parser.hpp"
#include "guardfix/repair/diff.hpp"
#include "guardfix/smt/solver.hpp"
#include "guardfix/support/text.hpp"

namespace guardfix::service {

namespace fs = std::filesystem;

namespace {

struct AnalyzedFile {
  std::string name;
  std::string path;
  std::shared_ptr<const frontend::TranslationUnit> unit;
  symexec::AnalysisResult result;
};

struct AnalyzeState {
  CommandResult result;
  std::vector<AnalyzedFile> files;
  std::vector<symexec::BugReport> reports;
};

CommandResult fail(int code, std::string message) {
  CommandResult r;
  r.exit_code = code;
  r.message = std::move(message);
  return r;
}

bool report_order(const symexec::BugReport& a, const symexec::BugReport& b) {
  if (a.file != b.file) return a.file < b.file;
  if (a.line != b.line) return a.line < b.line;
  if (a.path != b.path) return a.path < b.path;
  return a.problem_id < b.problem_id;
}

AnalyzeState analyze_into_store(const std::vector<std::string>& paths, const RunConfig& config,
                                const std::string& store_root, const std::string& requested_id) {
  AnalyzeState state;
  try {
    validate_run_config(config);
  } catch (const ConfigError& e) {
    state.result = fail(kExitUsage, e.what());
    return state;
  }
  if (paths.empty()) {
    state.result = fail(kExitUsage, "no input files");
    return state;
  }
  for (const auto& p : paths) {
    if (!fs::is_regular_file(p)) {
      state.result = fail(kExitUsage, "input file not found: " + p);
      return state;
    }
  }
  std::string reason;
  if (!solver_available(config, &reason)) {
    state.result = fail(kExitSolverUnavailable, "solver unavailable: " + reason);
    return state;
  }
  for (const auto& p : paths) {
    AnalyzedFile f;
    f.name = p;
    f.path = fs::absolute(p).lexically_normal().string();
    try {
      f.unit = frontend::parse_translation_unit(read_file(p), f.name);
    } catch (const frontend::FrontendError& e) {
      state.result = fail(kExitParseError, p + ": " + e.what());
      return state;
    }
    state.files.push_back(std::move(f));
  }

  auto analysis = analysis_config(config);
  nlohmann::json files = nlohmann::json::array();
  std::vector<symexec::Diagnostic> diagnostics;
  for (auto& f : state.files) {
    try {
      f.result = repair::analyze_unit(f.unit, analysis);
    } catch (const smt::SolverUnavailable& e) {
      state.result = fail(kExitSolverUnavailable, std::string("solver unavailable: ") + e.what());
      return state;
    }
    state.reports.insert(state.reports.end(), f.result.reports.begin(), f.result.reports.end());
    diagnostics.insert(diagnostics.end(), f.result.diagnostics.begin(), f.result.diagnostics.end());
    files.push_back({{"name", f.name}, {"path", f.path}});
  }
  std::stable_sort(state.reports.begin(), state.reports.end(), report_order);

  std::string run_id = requested_id.empty() ? default_run_id(paths, config) : requested_id;
  try {
    auto store = FindingStore::create(store_root, run_id, {{"files", files}, {"config", to_json(config)}});
    store.write_reports(state.reports, diagnostics);
    state.result.summary = {{"run_id", run_id},
                            {"reports", state.reports.size()},
                            {"report_file", (fs::path(store.dir()) / "report.json").string()}};
  } catch (const StoreError& e) {
    state.result = fail(kExitUsage, e.what());
    return state;
  }
  state.result.run_id = run_id;
  state.result.message = std::to_string(state.reports.size()) + " report(s) in run " + run_id;
  return state;
}

}  // namespace

std::string default_run_id(const std::vector<std::string>& paths, const RunConfig& config) {
  std::uint64_t h = fnv1a(to_json(config).dump());
  for (const auto& p : paths) {
    h = fnv1a(p, h);
    h = fnv1a(std::string_view("\0", 1), h);
    if (fs::is_regular_file(p)) h = fnv1a(read_file(p), h);
  }
  return "run-" + to_hex(h, 12);
}

bool solver_available(const RunConfig& config, std::string* reason) {
  auto options = analysis_config(config).engine.solver;
  options.fast_path = false;
  options.cache = false;
  try {
    smt::SmtSolver solver(options);
    smt::ConstraintSystem empty;
    auto verdict = solver.check_sat(empty);
    if (verdict.is_sat()) return true;
    if (reason) *reason = "'" + options.path + "' did not answer a trivial query";
  } catch (const smt::SolverUnavailable& e) {
    if (reason) *reason = e.what();
  }
  return false;
}

CommandResult cmd_analyze(const std::vector<std::string>& paths, const RunConfig& config,
                          const std::string& store_root, const std::string& run_id) {
  return analyze_into_store(paths, config, store_root, run_id).result;
}

CommandResult cmd_repair(const std::vector<std::string>& paths, const RunConfig& config,
                         const std::string& store_root, const std::string& run_id, bool yes) {
  auto state = analyze_into_store(paths, config, store_root, run_id);
  if (state.result.exit_code != kExitOk) return state.result;

  repair::PatternPool pool;
  try {
    pool = load_pool(config);
  } catch (const Error& e) {
    return fail(kExitUsage, e.what());
  }
  auto store = FindingStore::open(store_root, state.result.run_id);
  smt::SmtSolver solver(analysis_config(config).engine.solver);
  repair::RepairOptions options;
  options.handler = config.handler;

  std::map<std::string, const frontend::TranslationUnit*> units;
  for (const auto& f : state.files) units[f.name] = f.unit.get();
  std::size_t staged = 0;
  std::size_t failed = 0;
  nlohmann::json items = nlohmann::json::array();
  std::vector<std::string> validated;
  for (const auto& report : state.reports) {
    auto c = repair::generate_candidate(report, *units.at(report.file), pool, solver, options);
    store.write_candidate(c);
    if (c.status == repair::ValidationStatus::Failed) {
      ++failed;
    } else {
      ++staged;
      validated.push_back(c.problem_id);
    }
    items.push_back({{"id", c.problem_id}, {"status", repair::to_string(c.status)}, {"reason", c.failure_reason}});
  }

  CommandResult result = state.result;
  result.summary["staged"] = staged;
  result.summary["failed"] = failed;
  result.summary["candidates"] = items;
  result.message = std::to_string(staged) + " candidate(s) staged, " + std::to_string(failed) + " failed, run " +
                   result.run_id;
  if (yes || config.auto_apply) {
    auto applied = cmd_apply(store_root, result.run_id, validated);
    result.summary["apply"] = applied.summary;
    result.exit_code = applied.exit_code;
    result.message += "; " + applied.message;
  }
  return result;
}

CommandResult cmd_apply(const std::string& store_root, const std::string& run_id, const std::vector<std::string>& ids) {
  std::optional<FindingStore> opened;
  try {
    opened = FindingStore::open(store_root, run_id);
  } catch (const StoreError& e) {
    return fail(kExitUsage, e.what());
  }
  FindingStore& store = *opened;
  auto info = store.run_info();
  RunConfig config = run_config_from_json(info.at("config"));
  std::map<std::string, std::string> paths;
  for (const auto& f : info.at("files")) paths[f.at("name").get<std::string>()] = f.at("path").get<std::string>();

  nlohmann::json applied = nlohmann::json::array();
  nlohmann::json failed = nlohmann::json::array();
  nlohmann::json introduced = nlohmann::json::array();
  auto reject = [&](const std::string& id, const std::string& reason) {
    failed.push_back({{"id", id}, {"reason", reason}});
  };

  for (const auto& id : ids) {
    auto c = store.candidate(id);
    if (!c) {
      reject(id, "unknown candidate");
      continue;
    }
    auto d = store.decision(id);
    if (d.state == Decision::Applied) {
      reject(id, "already applied");
    } else if (d.state == Decision::Rejected) {
      reject(id, "candidate was rejected");
    } else if (c->status == repair::ValidationStatus::Failed) {
      reject(id, "candidate failed validation: " + c->failure_reason);
    } else {
      store.decide(id, Decision::Accepted);
    }
  }

  auto decisions = store.decisions();
  std::map<std::string, std::vector<repair::RepairCandidate>> by_file;
  std::vector<std::string> file_order;
  for (auto& c : store.candidates()) {
    auto it = decisions.find(c.problem_id);
    if (it == decisions.end() || it->second.state != Decision::Accepted) continue;
    if (c.status == repair::ValidationStatus::Failed) {
      reject(c.problem_id, "candidate failed validation: " + c.failure_reason);
      continue;
    }
    if (!by_file.count(c.file)) file_order.push_back(c.file);
    by_file[c.file].push_back(std::move(c));
  }

  auto reports = store.reports();
  auto analysis = analysis_config(config);
  std::vector<std::string> modified;
  for (const auto& file : file_order) {
    auto pit = paths.find(file);
    if (pit == paths.end()) {
      for (const auto& c : by_file[file]) reject(c.problem_id, "file is not part of the run");
      continue;
    }
    std::string text = read_file(pit->second);
    std::vector<const repair::RepairCandidate*> usable;
    for (const auto& c : by_file[file]) {
      if (c.end_offset > text.size() || text.compare(c.begin_offset, c.end_offset - c.begin_offset, c.statement) != 0) {
        std::string reason = repair::SpanDrift("statement of " + c.problem_id + " changed since detection").what();
        store.record_failure(c.problem_id, reason);
        reject(c.problem_id, reason);
        continue;
      }
      usable.push_back(&c);
    }
    if (usable.empty()) continue;
    repair::PatchResult patch;
    try {
      patch = repair::insert_repairs(text, usable);
    } catch (const repair::SpanDrift& e) {
      for (const auto* c : usable) reject(c->problem_id, e.what());
      continue;
    }
    write_file_atomic(pit->second, patch.text);
    modified.push_back(file);

    std::vector<symexec::BugReport> before;
    for (const auto& r : reports) {
      if (r.file == file) before.push_back(r);
    }
    std::optional<repair::RevalidationResult> check;
    std::string note;
    try {
      check = repair::revalidate(patch.text, file, patch, before, analysis);
    } catch (const Error& e) {
      note = std::string("revalidation failed: ") + e.what();
    }
    for (std::size_t i = 0; i < usable.size(); ++i) {
      bool ok = false;
      if (check) {
        ok = std::none_of(check->remaining.begin(), check->remaining.end(),
                          [&](const symexec::BugReport& r) { return r.line == patch.statement_lines[i]; });
      }
      store.mark_applied(usable[i]->problem_id, ok, ok ? std::string() : (note.empty() ? "overflow still reported" : note));
      applied.push_back({{"id", usable[i]->problem_id}, {"file", file}, {"line", patch.statement_lines[i]},
                         {"revalidated", ok}});
    }
    if (check) {
      for (const auto& r : check->introduced) {
        introduced.push_back({{"file", file}, {"line", r.line}, {"statement", r.statement}});
      }
    }
  }

  std::size_t revalidated = 0;
  for (const auto& a : applied) revalidated += a["revalidated"].get<bool>() ? 1 : 0;
  CommandResult result;
  result.run_id = run_id;
  result.summary = {{"run_id", run_id},
                    {"applied", applied},
                    {"failed", failed},
                    {"introduced", introduced},
                    {"modified_files", modified},
                    {"revalidated", revalidated}};
  store.write_apply_summary(result.summary);
  bool clean = failed.empty() && revalidated == applied.size();
  result.exit_code = clean ? kExitOk : kExitApplyFailures;
  result.message = std::to_string(applied.size()) + " applied, " + std::to_string(revalidated) + " revalidated, " +
                   std::to_string(failed.size()) + " failed";
  return result;
}

}  // namespace guardfix::service
