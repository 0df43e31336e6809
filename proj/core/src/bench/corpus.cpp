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
#include "guardfix/bench/corpus.hpp"

#include <chrono>
#include <filesystem>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "guardfix/frontend/parser.hpp"
#include "guardfix/support/text.hpp"

namespace guardfix::bench {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_manifest(const std::string& dir, const std::vector<ManifestEntry>& manifest) {
  std::set<std::string> listed;
  for (const auto& e : manifest) {
    if (!listed.insert(e.file).second) throw ManifestMismatch("duplicate manifest entry " + e.file);
    if (!fs::is_regular_file(fs::path(dir) / e.file)) {
      throw ManifestMismatch("manifest lists " + e.file + " which is not in " + dir);
    }
  }
  for (const auto& item : fs::directory_iterator(dir)) {
    if (item.path().extension() != ".c") continue;
    auto name = item.path().filename().string();
    if (!listed.count(name)) throw ManifestMismatch(name + " in " + dir + " has no manifest entry");
  }
}

ProgramMetrics run_program(const std::string& dir, const ManifestEntry& entry, const CorpusOptions& options,
                           const repair::PatternPool& pool, smt::SmtSolver& solver) {
  ProgramMetrics m;
  m.file = entry.file;
  m.loc_class = entry.loc_class;
  auto text = read_file((fs::path(dir) / entry.file).string());
  m.loc_before = count_lines(text);
  auto unit = frontend::parse_translation_unit(text, entry.file);
  int runs = std::max(options.runs, 1);

  symexec::AnalysisResult analysis;
  std::vector<repair::RepairCandidate> candidates;
  repair::PatchResult patch;
  for (int run = 0; run < runs; ++run) {
    auto start = Clock::now();
    analysis = repair::analyze_unit(unit, options.analysis);
    m.detection_seconds += seconds_since(start);

    start = Clock::now();
    candidates.clear();
    for (const auto& report : analysis.reports) {
      candidates.push_back(repair::generate_candidate(report, *unit, pool, solver, options.repair));
    }
    std::vector<const repair::RepairCandidate*> usable;
    for (const auto& c : candidates) {
      if (c.status != repair::ValidationStatus::Failed) usable.push_back(&c);
    }
    patch = repair::insert_repairs(text, usable);
    m.repair_seconds += seconds_since(start);
  }
  m.detection_seconds /= runs;
  m.repair_seconds /= runs;

  for (const auto& report : analysis.reports) {
    m.reported_lines.push_back(report.line);
    if (entry.tp_line != 0 && report.line == entry.tp_line) {
      ++m.tp;
    } else {
      ++m.fp;
    }
  }
  m.tp = std::min<std::size_t>(m.tp, 1);
  m.fn = entry.tp_line != 0 && m.tp == 0 ? 1 : 0;
  m.candidates = candidates.size();
  for (const auto& c : candidates) {
    if (c.status == repair::ValidationStatus::Failed) ++m.candidates_failed;
  }
  m.loc_after = count_lines(patch.text);

  auto start = Clock::now();
  auto check = repair::revalidate(patch.text, entry.file, patch, analysis.reports, options.analysis);
  m.revalidation_seconds = seconds_since(start);
  m.revalidated = check.revalidated && check.introduced.empty() && m.candidates_failed == 0;

  if (!options.patched_dir.empty()) {
    write_file_atomic((fs::path(options.patched_dir) / entry.file).string(), patch.text);
  }
  if (!options.artifacts_dir.empty()) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& r : analysis.reports) reports.push_back(symexec::to_json(r));
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : candidates) cands.push_back(repair::to_json(c));
    nlohmann::json doc = {{"schema_version", 1}, {"file", entry.file}, {"reports", reports},
                          {"candidates", cands}, {"patched", patch.text}};
    write_file_atomic((fs::path(options.artifacts_dir) / (entry.file + ".json")).string(), doc.dump(2) + "\n");
  }
  return m;
}

}  // namespace

double CorpusMetrics::detection_rate() const {
  return manifest_true_positives ? static_cast<double>(tp) / static_cast<double>(manifest_true_positives) : 0.0;
}

double CorpusMetrics::repair_overhead() const {
  return detection_seconds > 0 ? repair_seconds / detection_seconds : 0.0;
}

double CorpusMetrics::loc_increase() const {
  return loc_before ? (static_cast<double>(loc_after) - static_cast<double>(loc_before)) /
                          static_cast<double>(loc_before)
                    : 0.0;
}

CorpusMetrics run_corpus(const std::string& dir, const std::vector<ManifestEntry>& manifest,
                         const CorpusOptions& options) {
  check_manifest(dir, manifest);
  if (!options.patched_dir.empty()) fs::create_directories(options.patched_dir);
  if (!options.artifacts_dir.empty()) fs::create_directories(options.artifacts_dir);
  const repair::PatternPool& pool = options.pool ? *options.pool : repair::default_pattern_pool();
  smt::SmtSolver solver(options.analysis.engine.solver);

  CorpusMetrics metrics;
  metrics.runs = std::max(options.runs, 1);
  for (const auto& entry : manifest) {
    auto m = run_program(dir, entry, options, pool, solver);
    metrics.tp += m.tp;
    metrics.fp += m.fp;
    metrics.fn += m.fn;
    if (entry.tp_line != 0) ++metrics.manifest_true_positives;
    metrics.detection_seconds += m.detection_seconds;
    metrics.repair_seconds += m.repair_seconds;
    metrics.revalidation_seconds += m.revalidation_seconds;
    metrics.loc_before += m.loc_before;
    metrics.loc_after += m.loc_after;
    if (m.revalidated) ++metrics.revalidated_programs;
    auto& cls = metrics.per_class[m.loc_class];
    ++cls.programs;
    cls.detection_seconds += m.detection_seconds;
    cls.repair_seconds += m.repair_seconds;
    cls.loc += static_cast<double>(m.loc_before);
    metrics.programs.push_back(std::move(m));
  }
  for (auto& [name, cls] : metrics.per_class) {
    auto n = static_cast<double>(cls.programs);
    cls.detection_seconds /= n;
    cls.repair_seconds /= n;
    cls.loc /= n;
  }
  return metrics;
}

nlohmann::json to_json(const CorpusMetrics& m) {
  nlohmann::json programs = nlohmann::json::array();
  for (const auto& p : m.programs) {
    programs.push_back({{"file", p.file},
                        {"loc_class", p.loc_class},
                        {"tp", p.tp},
                        {"fp", p.fp},
                        {"fn", p.fn},
                        {"reported_lines", p.reported_lines},
                        {"detection_seconds", p.detection_seconds},
                        {"repair_seconds", p.repair_seconds},
                        {"revalidation_seconds", p.revalidation_seconds},
                        {"loc_before", p.loc_before},
                        {"loc_after", p.loc_after},
                        {"candidates", p.candidates},
                        {"candidates_failed", p.candidates_failed},
                        {"revalidated", p.revalidated}});
  }
  nlohmann::json classes = nlohmann::json::object();
  for (const auto& [name, c] : m.per_class) {
    classes[name.empty() ? "unclassified" : name] = {{"programs", c.programs},
                                                     {"detection_seconds", c.detection_seconds},
                                                     {"repair_seconds", c.repair_seconds},
                                                     {"loc", c.loc}};
  }
  return {{"schema_version", 1},
          {"runs", m.runs},
          {"programs", programs},
          {"totals",
           {{"programs", m.programs.size()},
            {"tp", m.tp},
            {"fp", m.fp},
            {"fn", m.fn},
            {"detection_rate", m.detection_rate()},
            {"detection_seconds", m.detection_seconds},
            {"repair_seconds", m.repair_seconds},
            {"revalidation_seconds", m.revalidation_seconds},
            {"repair_overhead", m.repair_overhead()},
            {"loc_before", m.loc_before},
            {"loc_after", m.loc_after},
            {"loc_increase", m.loc_increase()},
            {"revalidated_programs", m.revalidated_programs}}},
          {"per_class", classes}};
}

std::string format_table(const CorpusMetrics& m) {
  std::ostringstream out;
  out << fmt::format("{:<8} {:>8} {:>10} {:>14} {:>12}\n", "class", "programs", "avg LOC", "detect (s)",
                     "repair (s)");
  for (const auto& [name, c] : m.per_class) {
    out << fmt::format("{:<8} {:>8} {:>10.0f} {:>14.3f} {:>12.4f}\n", name.empty() ? "-" : name, c.programs,
                       c.loc, c.detection_seconds, c.repair_seconds);
  }
  out << fmt::format("\nTP {}  FP {}  FN {}  detection {:.1f}%\n", m.tp, m.fp, m.fn, 100.0 * m.detection_rate());
  out << fmt::format("repair overhead {:.2f}% of detection time\n", 100.0 * m.repair_overhead());
  out << fmt::format("LOC {} -> {} (+{:.2f}%)\n", m.loc_before, m.loc_after, 100.0 * m.loc_increase());
  out << fmt::format("revalidated {}/{}\n", m.revalidated_programs, m.programs.size());
  return out.str();
}

}  // namespace guardfix::bench
