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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guardfix/support/error.hpp"
#include "guardfix/support/integer.hpp"

namespace guardfix::bench {

struct BenchSpec {
  /// Helper functions called from main.
  int function_count = 3;
  int loop_iteration_count = 2;
  int false_positive_count = 1;
  int seed_depth = 2;
  std::uint64_t seed = 1;
  /// Target size in lines; 0 keeps the program minimal.
  int target_loc = 0;
  std::string loc_class;
  /// When false the program has no reachable overflow and tp_line is 0.
  bool seed_true_positive = true;
};

/// Size classes of the evaluation ("1K", "2K", "6K", "11K", "20K").
int loc_class_lines(const std::string& loc_class);
const std::vector<std::string>& loc_classes();

struct ManifestEntry {
  std::string file;
  /// 0 when the program holds no true positive.
  std::uint32_t tp_line = 0;
  std::string kind = "integer-overflow";
  std::string tp_operation;
  std::vector<std::uint32_t> decoy_lines;
  /// Input values (RAND32 results in call order) reaching the true positive.
  std::vector<Integer> witness;
  std::string loc_class;
  std::size_t loc = 0;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const ManifestEntry& entry);
ManifestEntry manifest_entry_from_json(const nlohmann::json& j);

struct GeneratedProgram {
  std::string source;
  ManifestEntry manifest;
};

/// Deterministic for a fixed spec; exactly one overflow is reachable.
GeneratedProgram generate_program(const BenchSpec& spec, const std::string& file_name);

/// Writes `count` programs and manifest.jsonl into `dir`, cycling over `classes`.
std::vector<ManifestEntry> generate_corpus(const std::string& dir, int count, std::uint64_t seed,
                                           const std::vector<std::string>& classes);

class ManifestMismatch : public Error {
 public:
  using Error::Error;
};

std::vector<ManifestEntry> read_manifest(const std::string& path);
void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);

}  // namespace guardfix::bench
