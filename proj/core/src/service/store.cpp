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
#include "guardfix/service/store.hpp"

#include <filesystem>

#include "guardfix/support/text.hpp"

namespace guardfix::service {

namespace fs = std::filesystem;

namespace {

nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_file(path.string()));
  } catch (const nlohmann::json::exception& e) {
    throw StoreError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  write_file_atomic(path.string(), doc.dump(2) + "\n");
}

// Problem ids are file-name safe; anything else is rejected before touching disk.
bool safe_id(const std::string& id) {
  if (id.empty() || id.size() > 200) return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') return false;
  }
  return id != "." && id != "..";
}

}  // namespace

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Pending: return "pending";
    case Decision::Accepted: return "accepted";
    case Decision::Rejected: return "rejected";
    case Decision::Applied: return "applied";
  }
  return "pending";
}

Decision decision_from_string(const std::string& text) {
  if (text == "pending") return Decision::Pending;
  if (text == "accepted") return Decision::Accepted;
  if (text == "rejected") return Decision::Rejected;
  if (text == "applied") return Decision::Applied;
  throw Error("unknown decision '" + text + "'");
}

FindingStore::FindingStore(std::string root, std::string run_id)
    : root_(std::move(root)), run_id_(std::move(run_id)), dir_((fs::path(root_) / run_id_).string()) {}

FindingStore FindingStore::create(const std::string& root, const std::string& run_id, const nlohmann::json& run_info) {
  if (!safe_id(run_id)) throw StoreError("invalid run id '" + run_id + "'");
  FindingStore store(root, run_id);
  fs::remove_all(store.dir_);
  fs::create_directories(fs::path(store.dir_) / "candidates");
  nlohmann::json info = run_info;
  info["schema_version"] = kSchemaVersion;
  info["run_id"] = run_id;
  write_json(fs::path(store.dir_) / "run.json", info);
  store.save_decisions({});
  return store;
}

FindingStore FindingStore::open(const std::string& root, const std::string& run_id) {
  if (!safe_id(run_id)) throw StoreError("invalid run id '" + run_id + "'");
  FindingStore store(root, run_id);
  if (!fs::is_regular_file(fs::path(store.dir_) / "run.json")) {
    throw StoreError("no run '" + run_id + "' under " + root);
  }
  return store;
}

nlohmann::json FindingStore::run_info() const { return read_json(fs::path(dir_) / "run.json"); }

void FindingStore::write_reports(const std::vector<symexec::BugReport>& reports,
                                 const std::vector<symexec::Diagnostic>& diagnostics) {
  auto path = fs::path(dir_) / "report.json";
  if (fs::exists(path)) throw StoreError("reports of run " + run_id_ + " are already recorded");
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : reports) rs.push_back(symexec::to_json(r));
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : diagnostics) ds.push_back(symexec::to_json(d));
  write_json(path, {{"schema_version", kSchemaVersion}, {"run_id", run_id_}, {"reports", rs}, {"diagnostics", ds}});
}

std::vector<symexec::BugReport> FindingStore::reports() const {
  auto path = fs::path(dir_) / "report.json";
  std::vector<symexec::BugReport> out;
  if (!fs::exists(path)) return out;
  auto doc = read_json(path);
  for (const auto& r : doc.at("reports")) out.push_back(symexec::report_from_json(r));
  return out;
}

std::optional<symexec::BugReport> FindingStore::report(const std::string& id) const {
  for (auto& r : reports()) {
    if (r.problem_id == id) return r;
  }
  return std::nullopt;
}

void FindingStore::write_candidate(const repair::RepairCandidate& c) {
  if (!safe_id(c.problem_id)) throw StoreError("invalid problem id '" + c.problem_id + "'");
  auto doc = repair::to_json(c);
  doc["schema_version"] = kSchemaVersion;
  write_json(fs::path(dir_) / "candidates" / (c.problem_id + ".json"), doc);
  auto decisions = this->decisions();
  if (!decisions.count(c.problem_id)) {
    decisions[c.problem_id] = {};
    save_decisions(decisions);
  }
}

std::optional<repair::RepairCandidate> FindingStore::candidate(const std::string& id) const {
  if (!safe_id(id)) return std::nullopt;
  auto path = fs::path(dir_) / "candidates" / (id + ".json");
  if (!fs::is_regular_file(path)) return std::nullopt;
  return repair::candidate_from_json(read_json(path));
}

std::vector<repair::RepairCandidate> FindingStore::candidates() const {
  std::vector<repair::RepairCandidate> out;
  for (const auto& r : reports()) {
    if (auto c = candidate(r.problem_id)) out.push_back(std::move(*c));
  }
  return out;
}

std::map<std::string, DecisionRecord> FindingStore::decisions() const {
  std::map<std::string, DecisionRecord> out;
  auto path = fs::path(dir_) / "decisions.json";
  if (!fs::exists(path)) return out;
  auto doc = read_json(path);
  for (const auto& [id, rec] : doc.at("decisions").items()) {
    DecisionRecord d;
    d.state = decision_from_string(rec.at("state").get<std::string>());
    if (rec.contains("revalidated")) d.revalidated = rec["revalidated"].get<bool>();
    d.note = rec.value("note", std::string());
    out[id] = d;
  }
  return out;
}

DecisionRecord FindingStore::decision(const std::string& id) const {
  auto all = decisions();
  auto it = all.find(id);
  if (it == all.end()) throw UnknownFinding(id);
  return it->second;
}

void FindingStore::decide(const std::string& id, Decision decision) {
  if (decision != Decision::Accepted && decision != Decision::Rejected) {
    throw Error("a decision is either accepted or rejected");
  }
  auto all = decisions();
  auto it = all.find(id);
  if (it == all.end()) throw UnknownFinding(id);
  if (it->second.state == Decision::Applied) throw DecisionConflict("candidate " + id + " is already applied");
  it->second.state = decision;
  it->second.note.clear();
  save_decisions(all);
}

void FindingStore::mark_applied(const std::string& id, bool revalidated, const std::string& note) {
  auto all = decisions();
  auto it = all.find(id);
  if (it == all.end()) throw UnknownFinding(id);
  if (it->second.state != Decision::Accepted) throw DecisionConflict("candidate " + id + " is not accepted");
  it->second.state = Decision::Applied;
  it->second.revalidated = revalidated;
  it->second.note = note;
  save_decisions(all);
}

void FindingStore::record_failure(const std::string& id, const std::string& note) {
  auto all = decisions();
  auto it = all.find(id);
  if (it == all.end()) throw UnknownFinding(id);
  it->second.note = note;
  save_decisions(all);
}

void FindingStore::save_decisions(const std::map<std::string, DecisionRecord>& decisions) {
  nlohmann::json ds = nlohmann::json::object();
  for (const auto& [id, d] : decisions) {
    nlohmann::json rec = {{"state", to_string(d.state)}};
    if (d.revalidated) rec["revalidated"] = *d.revalidated;
    if (!d.note.empty()) rec["note"] = d.note;
    ds[id] = rec;
  }
  write_json(fs::path(dir_) / "decisions.json", {{"schema_version", kSchemaVersion}, {"decisions", ds}});
}

void FindingStore::write_apply_summary(const nlohmann::json& summary) {
  nlohmann::json doc = summary;
  doc["schema_version"] = kSchemaVersion;
  write_json(fs::path(dir_) / "apply.json", doc);
}

std::optional<nlohmann::json> FindingStore::apply_summary() const {
  auto path = fs::path(dir_) / "apply.json";
  if (!fs::exists(path)) return std::nullopt;
  return read_json(path);
}

}  // namespace guardfix::service
