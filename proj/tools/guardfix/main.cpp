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
#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "guardfix/bench/corpus.hpp"
#include "guardfix/bench/generator.hpp"
#include "guardfix/service/commands.hpp"
#include "guardfix/service/config.hpp"
#include "guardfix/service/server.hpp"
#include "guardfix/support/text.hpp"

using namespace guardfix;

namespace {

struct ConfigFlags {
  std::string config_file;
  std::optional<int> unroll;
  std::optional<int> call_depth;
  std::optional<std::string> solver;
  std::optional<int> solver_timeout;
  std::optional<std::string> limits;
  std::optional<std::string> patterns;
  std::optional<std::string> handler;
  bool auto_apply = false;
  std::optional<int> workers;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "key = value configuration file");
    app->add_option("--unroll", unroll, "loop unroll bound");
    app->add_option("--call-depth", call_depth, "maximum inlined call depth");
    app->add_option("--solver", solver, "SMT-LIB v2 solver executable");
    app->add_option("--solver-timeout", solver_timeout, "per-query solver timeout in milliseconds");
    app->add_option("--limits", limits, "limits.h used to resolve bound macros");
    app->add_option("--patterns", patterns, "repair pattern pool (JSON)");
    app->add_option("--handler", handler, "overflow handler variant")->check(CLI::IsMember({"v1", "v2"}));
    app->add_flag("--auto-apply", auto_apply, "apply validated repairs without review");
    app->add_option("--workers", workers, "analysis worker threads");
  }

  service::RunConfig build() const {
    service::RunConfig c;
    if (!config_file.empty()) c = service::load_run_config(config_file, c);
    if (unroll) c.unroll_bound = *unroll;
    if (call_depth) c.call_depth = *call_depth;
    if (solver) c.solver_path = *solver;
    if (solver_timeout) c.solver_timeout_ms = *solver_timeout;
    if (limits) c.limits_path = *limits;
    if (patterns) c.pattern_pool_path = *patterns;
    if (handler) c.handler = repair::handler_variant_from_string(*handler);
    if (auto_apply) c.auto_apply = true;
    if (workers) c.workers = *workers;
    return c;
  }
};

int report(const service::CommandResult& r, bool json) {
  if (json) {
    std::cout << r.summary.dump(2) << "\n";
  } else if (!r.message.empty()) {
    (r.exit_code == service::kExitOk ? std::cout : std::cerr) << r.message << "\n";
  }
  return r.exit_code;
}

service::ReviewServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"guardfix: integer overflow detection and repair for C"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string store = ".guardfix";
  bool json = false;
  app.add_option("--store", store, "finding store directory")->capture_default_str();
  app.add_flag("--json", json, "print machine-readable summaries");

  ConfigFlags flags;
  std::vector<std::string> files;
  std::string run_id;

  auto* analyze = app.add_subcommand("analyze", "detect integer overflows and write a report");
  analyze->add_option("files", files, "C source files")->required();
  analyze->add_option("--run-id", run_id, "run identifier (default: digest of inputs)");
  flags.attach(analyze);

  bool yes = false;
  auto* repair_cmd = app.add_subcommand("repair", "detect and stage validated repairs");
  repair_cmd->add_option("files", files, "C source files")->required();
  repair_cmd->add_option("--run-id", run_id, "run identifier (default: digest of inputs)");
  repair_cmd->add_flag("-y,--yes", yes, "accept, apply and revalidate every validated repair");
  flags.attach(repair_cmd);

  std::vector<std::string> ids;
  auto* apply = app.add_subcommand("apply", "apply accepted repairs of a run and revalidate");
  apply->add_option("run", run_id, "run identifier")->required();
  apply->add_option("ids", ids, "candidates to accept and apply (default: all accepted)");

  std::string host = "127.0.0.1";
  int port = 8765;
  bool allow_remote = false;
  auto* serve = app.add_subcommand("serve", "serve the review API for a run");
  serve->add_option("run", run_id, "run identifier")->required();
  serve->add_option("--host", host, "bind address")->capture_default_str();
  serve->add_option("--port", port, "port")->capture_default_str();
  serve->add_flag("--allow-remote", allow_remote, "permit binding a non-loopback address");

  auto* bench = app.add_subcommand("bench", "seeded benchmark corpus");
  bench->require_subcommand(1);
  std::string dir;
  int count = 100;
  std::uint64_t seed = 1;
  std::vector<std::string> classes;
  auto* gen = bench->add_subcommand("gen", "generate a seeded corpus with a manifest");
  gen->add_option("dir", dir, "output directory")->required();
  gen->add_option("--count", count, "number of programs")->capture_default_str();
  gen->add_option("--seed", seed, "corpus seed")->capture_default_str();
  gen->add_option("--classes", classes, "size classes to cycle through (1K 2K 6K 11K 20K)")->delimiter(',');

  std::string manifest;
  std::string metrics_out;
  std::string patched;
  std::string artifacts;
  int runs = 1;
  auto* run = bench->add_subcommand("run", "detect and repair every corpus program");
  run->add_option("dir", dir, "corpus directory")->required();
  run->add_option("--manifest", manifest, "manifest (default: <dir>/manifest.jsonl)");
  run->add_option("--runs", runs, "timing repetitions per program")->capture_default_str();
  run->add_option("--metrics", metrics_out, "write metrics JSON here");
  run->add_option("--patched", patched, "write repaired programs here");
  run->add_option("--artifacts", artifacts, "write per-program reports and candidates here");
  flags.attach(run);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return report(service::cmd_analyze(files, flags.build(), store, run_id), json);
    if (repair_cmd->parsed()) return report(service::cmd_repair(files, flags.build(), store, run_id, yes), json);
    if (apply->parsed()) return report(service::cmd_apply(store, run_id, ids), json);
    if (serve->parsed()) {
      service::ReviewServer server(store, run_id);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "serving run " << run_id << " on http://" << host << ":" << port << "\n" << std::flush;
      server.run(host, port, allow_remote);
      g_server = nullptr;
      return service::kExitOk;
    }
    if (gen->parsed()) {
      for (const auto& c : classes) bench::loc_class_lines(c);
      auto entries = bench::generate_corpus(dir, count, seed, classes);
      std::cout << "generated " << entries.size() << " programs in " << dir << "\n";
      return service::kExitOk;
    }
    if (run->parsed()) {
      auto config = flags.build();
      service::validate_run_config(config);
      bench::CorpusOptions options;
      options.analysis = service::analysis_config(config);
      options.repair.handler = config.handler;
      auto pool = service::load_pool(config);
      options.pool = &pool;
      options.runs = runs;
      options.patched_dir = patched;
      options.artifacts_dir = artifacts;
      auto entries = bench::read_manifest(manifest.empty() ? dir + "/manifest.jsonl" : manifest);
      auto metrics = bench::run_corpus(dir, entries, options);
      if (!metrics_out.empty()) write_file_atomic(metrics_out, bench::to_json(metrics).dump(2) + "\n");
      if (json) {
        std::cout << bench::to_json(metrics).dump(2) << "\n";
      } else {
        std::cout << bench::format_table(metrics);
      }
      return service::kExitOk;
    }
  } catch (const service::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return service::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return service::kExitUsage;
  }
  return service::kExitUsage;
}
