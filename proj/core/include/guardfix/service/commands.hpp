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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guardfix/service/config.hpp"
#include "guardfix/service/store.hpp"

namespace guardfix::service {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParseError = 2,
  kExitSolverUnavailable = 3,
  kExitApplyFailures = 4,
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string run_id;
  std::string message;
  nlohmann::json summary;
};

/// Deterministic id from the analyzed files and the configuration.
std::string default_run_id(const std::vector<std::string>& paths, const RunConfig& config);

/// Starts the configured solver once; false when it cannot be run.
bool solver_available(const RunConfig& config, std::string* reason = nullptr);

CommandResult cmd_analyze(const std::vector<std::string>& paths, const RunConfig& config,
                          const std::string& store_root, const std::string& run_id = {});

/// Analyzes, then stages one candidate per report. With `yes` (or the config's
/// auto-apply flag) every validated candidate is accepted and applied.
CommandResult cmd_repair(const std::vector<std::string>& paths, const RunConfig& config,
                         const std::string& store_root, const std::string& run_id = {}, bool yes = false);

/// Applies `ids` (recorded as accepted first), or every accepted candidate when
/// `ids` is empty, then revalidates each patched file.
CommandResult cmd_apply(const std::string& store_root, const std::string& run_id,
                        const std::vector<std::string>& ids = {});

}  // namespace guardfix::service
