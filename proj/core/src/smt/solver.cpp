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
#include "guardfix/smt/solver.hpp"

#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <mutex>

#include "guardfix/smt/smtlib.hpp"

extern char** environ;

namespace guardfix::smt {

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

bool model_satisfies(const ConstraintSystem& system, const Model& model) {
  for (const auto& a : system.assertions()) {
    auto v = evaluate(a.formula, model);
    if (!v || !*v) return false;
  }
  return true;
}

std::optional<Integer> parse_value(const SExpr& e) {
  if (e.is_atom) return parse_integer(e.atom);
  if (e.items.size() == 2 && e.items[0].is_atom && e.items[0].atom == "-") {
    auto inner = parse_value(e.items[1]);
    if (!inner) return std::nullopt;
    return Integer(-*inner);
  }
  return std::nullopt;
}

std::string strip_bars(const std::string& s) {
  if (s.size() >= 2 && s.front() == '|' && s.back() == '|') return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Sat: return "sat";
    case Verdict::Kind::Unsat: return "unsat";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string default_solver_path() {
  if (const char* env = std::getenv("GUARDFIX_SOLVER"); env && *env) return env;
#ifdef GUARDFIX_DEFAULT_SOLVER
  return GUARDFIX_DEFAULT_SOLVER;
#else
  return "z3";
#endif
}

SolverProcess::SolverProcess(SolverOptions options) : options_(std::move(options)) {
  ignore_sigpipe();
}

SolverProcess::~SolverProcess() { stop(); }

void SolverProcess::start() {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0) throw SolverUnavailable("pipe: " + std::string(std::strerror(errno)));
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw SolverUnavailable("pipe: " + std::string(std::strerror(errno)));
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);
  posix_spawn_file_actions_addclose(&actions, in_pipe[1]);
  posix_spawn_file_actions_addclose(&actions, out_pipe[0]);

  std::vector<std::string> argv_storage;
  argv_storage.push_back(options_.path);
  for (const auto& a : options_.args) argv_storage.push_back(a);
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  argv.push_back(nullptr);

  pid_t pid = -1;
  int rc = ::posix_spawnp(&pid, options_.path.c_str(), &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    throw SolverUnavailable("cannot start solver '" + options_.path + "': " + std::strerror(rc));
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
}

void SolverProcess::stop() {
  if (to_child_ >= 0) {
    ::close(to_child_);
    to_child_ = -1;
  }
  if (from_child_ >= 0) {
    ::close(from_child_);
    from_child_ = -1;
  }
  if (pid_ > 0) {
    ::kill(pid_, SIGKILL);
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
  buffer_.clear();
}

void SolverProcess::send(const std::string& text) {
  std::size_t done = 0;
  while (done < text.size()) {
    ssize_t n = ::write(to_child_, text.data() + done, text.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SolverUnavailable("solver pipe closed: " + std::string(std::strerror(errno)));
    }
    done += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> SolverProcess::read_line(std::chrono::milliseconds budget) {
  auto deadline = std::chrono::steady_clock::now() + budget;
  while (true) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) return std::nullopt;
    pollfd pfd{from_child_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      return std::nullopt;
    }
    if (rc == 0) return std::nullopt;
    char chunk[4096];
    ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      return std::nullopt;
    }
    if (n == 0) return std::nullopt;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::optional<std::string> SolverProcess::read_sexpr_text(std::chrono::milliseconds budget) {
  std::string text;
  int depth = 0;
  bool started = false;
  auto deadline = std::chrono::steady_clock::now() + budget;
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    auto line = read_line(left);
    if (!line) return std::nullopt;
    bool quoted = false;
    for (char c : *line) {
      if (c == '|') quoted = !quoted;
      if (quoted) continue;
      if (c == '(') {
        ++depth;
        started = true;
      } else if (c == ')') {
        --depth;
      }
    }
    text += *line;
    text += '\n';
    if (started && depth <= 0) return text;
  }
}

Verdict SolverProcess::query(const std::string& script, const std::vector<std::string>& symbols) {
  if (pid_ < 0) start();
  auto budget = options_.timeout + std::chrono::milliseconds(5000);
  std::string prelude =
      "(reset)\n(set-option :timeout " + std::to_string(options_.timeout.count()) + ")\n";
  try {
    send(prelude + script);
  } catch (const SolverUnavailable&) {
    stop();
    start();
    send(prelude + script);
  }
  std::string errors;
  std::string answer;
  while (true) {
    auto line = read_line(budget);
    if (!line) {
      stop();
      return Verdict::unknown("solver did not answer within the time budget");
    }
    if (*line == "sat" || *line == "unsat" || *line == "unknown") {
      answer = *line;
      break;
    }
    if (line->rfind("(error", 0) == 0) errors += *line;
  }
  if (!errors.empty()) return Verdict::unknown("solver error: " + errors);
  if (answer == "unsat") return Verdict::unsat();
  if (answer == "unknown") return Verdict::unknown("solver returned unknown");
  Model model;
  if (symbols.empty()) return Verdict::sat(model);
  std::string request = "(get-value (";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) request += ' ';
    request += quote_symbol(symbols[i]);
  }
  request += "))\n";
  send(request);
  auto text = read_sexpr_text(budget);
  if (!text) {
    stop();
    return Verdict::unknown("solver did not return a model");
  }
  try {
    std::size_t pos = 0;
    SExpr values = read_sexpr(*text, pos);
    if (values.is_atom) return Verdict::unknown("unexpected get-value reply: " + *text);
    for (const auto& pair : values.items) {
      if (pair.is_atom || pair.items.size() != 2 || !pair.items[0].is_atom) {
        return Verdict::unknown("unexpected get-value reply: " + *text);
      }
      auto value = parse_value(pair.items[1]);
      if (!value) return Verdict::unknown("non-integer model value: " + *text);
      model[strip_bars(pair.items[0].atom)] = *value;
    }
  } catch (const Error& e) {
    return Verdict::unknown(std::string("unreadable model: ") + e.what());
  }
  return Verdict::sat(std::move(model));
}

SmtSolver::SmtSolver(SolverOptions options) : options_(std::move(options)) {}

Verdict SmtSolver::check_sat(const ConstraintSystem& system) {
  ++stats_.queries;
  if (options_.fast_path) {
    if (auto quick = quick_decide(system)) {
      if (!quick->is_sat() || model_satisfies(system, quick->model)) {
        ++stats_.fast_path_hits;
        return *quick;
      }
    }
  }
  std::string script = emit_smtlib(system, false);
  if (options_.cache) {
    auto it = cache_.find(script);
    if (it != cache_.end()) {
      ++stats_.cache_hits;
      return it->second;
    }
  }
  if (!process_) process_ = std::make_unique<SolverProcess>(options_);
  ++stats_.subprocess_calls;
  Verdict verdict = process_->query(script, system.declarations());
  if (verdict.is_sat() && !model_satisfies(system, verdict.model)) {
    verdict = Verdict::unknown("solver model failed re-evaluation");
  }
  if (options_.cache && !(verdict.is_unknown())) cache_.emplace(std::move(script), verdict);
  return verdict;
}

}  // namespace guardfix::smt
