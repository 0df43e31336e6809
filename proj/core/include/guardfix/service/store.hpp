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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guardfix/repair/repair.hpp"
#include "guardfix/support/error.hpp"
#include "guardfix/symexec/report.hpp"

namespace guardfix::service {

inline constexpr int kSchemaVersion = 1;

class StoreError : public Error {
 public:
  using Error::Error;
};

class UnknownFinding : public Error {
 public:
  explicit UnknownFinding(const std::string& id) : Error("unknown finding '" + id + "'") {}
};

/// Raised when a decision targets an applied candidate.
class DecisionConflict : public Error {
 public:
  using Error::Error;
};

enum class Decision { Pending, Accepted, Rejected, Applied };

std::string to_string(Decision decision);
Decision decision_from_string(const std::string& text);

struct DecisionRecord {
  Decision state = Decision::Pending;
  /// Post-apply revalidation outcome; set once applied.
  std::optional<bool> revalidated;
  std::string note;
};

/// One run's findings as a JSON directory:
///   run.json, report.json, candidates/<problem id>.json, decisions.json, apply.json
class FindingStore {
 public:
  /// Replaces any previous content of the run directory.
  static FindingStore create(const std::string& root, const std::string& run_id, const nlohmann::json& run_info);
  static FindingStore open(const std::string& root, const std::string& run_id);

  const std::string& run_id() const { return run_id_; }
  const std::string& dir() const { return dir_; }
  nlohmann::json run_info() const;

  void write_reports(const std::vector<symexec::BugReport>& reports,
                     const std::vector<symexec::Diagnostic>& diagnostics);
  std::vector<symexec::BugReport> reports() const;
  std::optional<symexec::BugReport> report(const std::string& id) const;

  void write_candidate(const repair::RepairCandidate& candidate);
  std::optional<repair::RepairCandidate> candidate(const std::string& id) const;
  std::vector<repair::RepairCandidate> candidates() const;

  std::map<std::string, DecisionRecord> decisions() const;
  DecisionRecord decision(const std::string& id) const;
  /// Accepted or rejected only; throws DecisionConflict on applied candidates.
  void decide(const std::string& id, Decision decision);
  void mark_applied(const std::string& id, bool revalidated, const std::string& note);
  void record_failure(const std::string& id, const std::string& note);

  void write_apply_summary(const nlohmann::json& summary);
  std::optional<nlohmann::json> apply_summary() const;

 private:
  FindingStore(std::string root, std::string run_id);
  void save_decisions(const std::map<std::string, DecisionRecord>& decisions);

  std::string root_;
  std::string run_id_;
  std::string dir_;
};

}  // namespace guardfix::service
