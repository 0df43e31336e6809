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

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include "guardfix/smt/system.hpp"
#include "guardfix/support/error.hpp"

namespace guardfix::smt {

class SolverUnavailable : public Error {
 public:
  using Error::Error;
};

struct Verdict {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind = Kind::Unknown;
  Model model;         // Sat only
  std::string reason;  // Unknown only

  bool is_sat() const { return kind == Kind::Sat; }
  bool is_unsat() const { return kind == Kind::Unsat; }
  bool is_unknown() const { return kind == Kind::Unknown; }

  static Verdict sat(Model model) { return {Kind::Sat, std::move(model), {}}; }
  static Verdict unsat() { return {Kind::Unsat, {}, {}}; }
  static Verdict unknown(std::string reason) { return {Kind::Unknown, {}, std::move(reason)}; }
};

std::string to_string(Verdict::Kind kind);

struct SolverOptions {
  std::string path = "z3";
  std::vector<std::string> args = {"-in", "-smt2"};
  std::chrono::milliseconds timeout{10000};
  /// Decide trivially-bounded systems without the subprocess.
  bool fast_path = true;
  bool cache = true;
};

/// The default solver binary configured at build time.
std::string default_solver_path();

/// One long-lived SMT-LIB v2 subprocess speaking over stdin/stdout.
class SolverProcess {
 public:
  explicit SolverProcess(SolverOptions options);
  ~SolverProcess();
  SolverProcess(const SolverProcess&) = delete;
  SolverProcess& operator=(const SolverProcess&) = delete;

  /// Sends `script` (which must end in check-sat) after a reset and returns the
  /// verdict; on sat, values for `symbols` are fetched with get-value.
  Verdict query(const std::string& script, const std::vector<std::string>& symbols);

 private:
  void start();
  void stop();
  void send(const std::string& text);
  std::optional<std::string> read_line(std::chrono::milliseconds budget);
  std::optional<std::string> read_sexpr_text(std::chrono::milliseconds budget);

  SolverOptions options_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

struct SolverStats {
  std::uint64_t queries = 0;
  std::uint64_t fast_path_hits = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t subprocess_calls = 0;
};

/// check_sat front end: fast bound reasoning, a script-keyed cache, then the
/// subprocess. Not thread-safe; use one per worker.
class SmtSolver {
 public:
  explicit SmtSolver(SolverOptions options = {});

  /// Sat verdicts always carry a model that satisfies every assertion; a model
  /// that fails re-evaluation is downgraded to Unknown.
  Verdict check_sat(const ConstraintSystem& system);

  const SolverStats& stats() const { return stats_; }
  const SolverOptions& options() const { return options_; }

 private:
  SolverOptions options_;
  std::unique_ptr<SolverProcess> process_;
  std::map<std::string, Verdict> cache_;
  SolverStats stats_;
};

/// Exact verdict from interval reasoning when it is cheap to obtain: Unsat when
/// some assertion cannot hold over the propagated ranges, Sat when every symbol
/// is pinned to one value that satisfies all assertions. nullopt otherwise.
std::optional<Verdict> quick_decide(const ConstraintSystem& system);

class SpaceTooLarge : public Error {
 public:
  using Error::Error;
};

/// Exhaustive oracle. Each declared symbol ranges over the `width`-bit signed
/// or unsigned range (signed unless listed in `unsigned_symbols`). Sat returns
/// the lexicographically smallest model in declaration order.
Verdict brute_force_check(const ConstraintSystem& system, int width,
                          const std::set<std::string>& unsigned_symbols = {});

}  // namespace guardfix::smt
