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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guardfix/bench/generator.hpp"
#include "guardfix/repair/repair.hpp"

namespace guardfix::bench {

struct ProgramMetrics {
  std::string file;
  std::string loc_class;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::vector<std::uint32_t> reported_lines;
  double detection_seconds = 0;
  double repair_seconds = 0;
  double revalidation_seconds = 0;
  std::size_t loc_before = 0;
  std::size_t loc_after = 0;
  std::size_t candidates = 0;
  std::size_t candidates_failed = 0;
  bool revalidated = true;
};

struct ClassAverages {
  std::size_t programs = 0;
  double detection_seconds = 0;
  double repair_seconds = 0;
  double loc = 0;
};

struct CorpusMetrics {
  std::vector<ProgramMetrics> programs;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t manifest_true_positives = 0;
  double detection_seconds = 0;
  double repair_seconds = 0;
  double revalidation_seconds = 0;
  std::size_t loc_before = 0;
  std::size_t loc_after = 0;
  std::size_t revalidated_programs = 0;
  std::map<std::string, ClassAverages> per_class;
  int runs = 1;

  double detection_rate() const;
  double repair_overhead() const;
  double loc_increase() const;
};

struct CorpusOptions {
  repair::AnalysisConfig analysis;
  repair::RepairOptions repair;
  const repair::PatternPool* pool = nullptr;
  /// Timing repetitions per program; times are averaged.
  int runs = 1;
  /// Directory receiving patched copies; empty to skip writing.
  std::string patched_dir;
  /// Report and candidate JSON per program, for determinism checks.
  std::string artifacts_dir;
};

/// Detects, repairs and revalidates every manifest program of `dir`.
CorpusMetrics run_corpus(const std::string& dir, const std::vector<ManifestEntry>& manifest,
                         const CorpusOptions& options = {});

nlohmann::json to_json(const CorpusMetrics& metrics);
std::string format_table(const CorpusMetrics& metrics);

}  // namespace guardfix::bench
