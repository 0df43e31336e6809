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
#include "guardfix/cfg/paths.hpp"

namespace guardfix::cfg {

CallDepthExceeded::CallDepthExceeded(std::string callee, frontend::Span site)
    : PathAbandoned("call depth exceeded at call to '" + callee + "' (line " +
                    std::to_string(site.begin.line) + ")"),
      callee_(std::move(callee)),
      site_(site) {}

namespace {

struct Collector {
  std::vector<ProgramPath> paths;

  Flow on_statement(int&, const WalkContext&, const CfgNode&) { return Flow::Continue; }
  Flow on_branch(int&, const WalkContext&, const CfgNode&, bool, bool) { return Flow::Continue; }
  Flow on_call_enter(int&, const WalkContext&, const CfgNode&, const Cfg&) { return Flow::Continue; }
  Flow on_call_exit(int&, const WalkContext&, const CfgNode&, const Cfg&) { return Flow::Continue; }
  void on_path_end(int&, const ProgramPath& path) { paths.push_back(path); }
  void on_abandon(int&, const ProgramPath&, const PathAbandoned&) { throw; }
};

}  // namespace

std::vector<ProgramPath> enumerate_paths(const CfgSet& cfgs, const Cfg& root,
                                         const WalkOptions& options,
                                         std::vector<CallSite> entry_context) {
  if (options.unroll_bound < 0) throw Error("unroll bound must be non-negative");
  Collector collector;
  walk_paths(cfgs, root, options, 0, collector, std::move(entry_context));
  return collector.paths;
}

}  // namespace guardfix::cfg
