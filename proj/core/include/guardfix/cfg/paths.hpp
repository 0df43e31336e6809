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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "guardfix/cfg/cfg.hpp"
#include "guardfix/support/error.hpp"

namespace guardfix::cfg {

/// Raised while exploring a path to abandon that path only.
class PathAbandoned : public Error {
 public:
  using Error::Error;
};

class CallDepthExceeded : public PathAbandoned {
 public:
  CallDepthExceeded(std::string callee, frontend::Span site);
  const std::string& callee() const { return callee_; }
  const frontend::Span& site() const { return site_; }

 private:
  std::string callee_;
  frontend::Span site_;
};

enum class LoopExhaustion { Prune, Bypass };

struct WalkOptions {
  int unroll_bound = 10;
  LoopExhaustion exhaustion = LoopExhaustion::Prune;
  /// Maximum number of inlined frames on top of the root.
  int max_call_depth = 8;
  bool record_steps = true;
};

struct CallSite {
  const Cfg* caller = nullptr;
  NodeId node = 0;
  friend bool operator==(const CallSite&, const CallSite&) = default;
};

struct PathStep {
  const Cfg* cfg = nullptr;
  NodeId node = 0;
  std::uint16_t depth = 0;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct ProgramPath {
  std::vector<PathStep> steps;
  std::vector<bool> decisions;
  std::vector<CallSite> entry_context;
  /// Largest iteration count reached per loop, keyed "function:node".
  std::map<std::string, int> loop_iterations;
};

struct Frame {
  const Cfg* cfg = nullptr;
  NodeId node = 0;
  NodeId call_node = 0;  // node of the caller that pushed this frame
  std::map<NodeId, int> loop_counts;
};

/// Read-only view of the walker's position handed to visitors.
struct WalkContext {
  const std::vector<Frame>& frames;
  const ProgramPath& path;

  int depth() const { return static_cast<int>(frames.size()) - 1; }
  const Frame& frame() const { return frames.back(); }
};

enum class Flow { Continue, Prune, Finish };

/// Depth-first walk over all bounded paths starting at `root`, true arm first.
///
/// Visitor requirements:
///   Flow on_statement(State&, const WalkContext&, const CfgNode&);
///   Flow on_branch(State&, const WalkContext&, const CfgNode&, bool taken, bool assume);
///   Flow on_call_enter(State&, const WalkContext&, const CfgNode& call, const Cfg& callee);
///   Flow on_call_exit(State&, const WalkContext&, const CfgNode& call, const Cfg& callee);
///   void on_path_end(State&, const ProgramPath&);
///   void on_abandon(State&, const ProgramPath&, const PathAbandoned&);
/// A PathAbandoned thrown from a callback abandons the current path.
template <class State, class Visitor>
void walk_paths(const CfgSet& cfgs, const Cfg& root, const WalkOptions& options, State initial,
                Visitor& visitor, std::vector<CallSite> entry_context = {});

/// Plain enumeration with every branch assumed feasible. Throws
/// CallDepthExceeded when the call string grows past the limit.
std::vector<ProgramPath> enumerate_paths(const CfgSet& cfgs, const Cfg& root,
                                         const WalkOptions& options,
                                         std::vector<CallSite> entry_context = {});

// ---------------------------------------------------------------------------

namespace detail {

template <class State>
struct WorkItem {
  State state;
  std::vector<Frame> frames;
  ProgramPath path;
  /// Branch decision still to be applied when the item is resumed.
  bool pending = false;
  bool pending_assume = true;
};

inline std::string loop_key(const Frame& f) {
  return f.cfg->function() + ":" + std::to_string(f.node);
}

}  // namespace detail

template <class State, class Visitor>
void walk_paths(const CfgSet& cfgs, const Cfg& root, const WalkOptions& options, State initial,
                Visitor& visitor, std::vector<CallSite> entry_context) {
  using Item = detail::WorkItem<State>;
  std::vector<Item> stack;
  {
    Item first{std::move(initial), {}, {}, false, true};
    first.frames.push_back(Frame{&root, root.entry(), 0, {}});
    first.path.entry_context = std::move(entry_context);
    stack.push_back(std::move(first));
  }

  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    State& state = item.state;
    auto& frames = item.frames;
    ProgramPath& path = item.path;

    auto record = [&](NodeId id) {
      if (options.record_steps) {
        path.steps.push_back(
            PathStep{frames.back().cfg, id, static_cast<std::uint16_t>(frames.size() - 1)});
      }
    };

    bool alive = true;
    bool resumed = item.pending;
    try {
      while (alive) {
        Frame& frame = frames.back();
        const Cfg& cfg = *frame.cfg;
        const CfgNode& node = cfg.node(frame.node);
        WalkContext ctx{frames, path};

        if (resumed) {
          // False arm of a branch deferred by an earlier split.
          resumed = false;
          Flow flow = visitor.on_branch(state, ctx, node, false, item.pending_assume);
          if (flow == Flow::Prune) { alive = false; break; }
          if (node.loop_header) frame.loop_counts.erase(node.id);
          path.decisions.push_back(false);
          frame.node = node.succ[1];
          continue;
        }

        record(node.id);
        switch (node.kind) {
          case NodeKind::Entry:
            frame.node = node.succ[0];
            break;
          case NodeKind::Statement: {
            Flow flow = visitor.on_statement(state, ctx, node);
            if (flow == Flow::Prune) { alive = false; break; }
            if (flow == Flow::Finish) {
              visitor.on_path_end(state, path);
              alive = false;
              break;
            }
            frame.node = node.succ[0];
            break;
          }
          case NodeKind::Call: {
            const Cfg* callee = cfgs.find(node.call->text);
            if (static_cast<int>(frames.size()) > options.max_call_depth) {
              throw CallDepthExceeded(node.call->text, node.span);
            }
            Flow flow = visitor.on_call_enter(state, ctx, node, *callee);
            if (flow == Flow::Prune) { alive = false; break; }
            frames.push_back(Frame{callee, callee->entry(), node.id, {}});
            break;
          }
          case NodeKind::Exit: {
            if (frames.size() == 1) {
              visitor.on_path_end(state, path);
              alive = false;
              break;
            }
            Frame done = std::move(frames.back());
            frames.pop_back();
            Frame& caller = frames.back();
            const CfgNode& call = caller.cfg->node(done.call_node);
            WalkContext back{frames, path};
            Flow flow = visitor.on_call_exit(state, back, call, *done.cfg);
            if (flow == Flow::Prune) { alive = false; break; }
            caller.node = call.succ[0];
            break;
          }
          case NodeKind::Branch: {
            bool take_true = true;
            bool assume_false = true;
            if (node.loop_header) {
              int count = 0;
              if (auto it = frame.loop_counts.find(node.id); it != frame.loop_counts.end()) {
                count = it->second;
              }
              if (count >= options.unroll_bound) {
                take_true = false;
                assume_false = options.exhaustion == LoopExhaustion::Prune || count == 0;
              }
            }
            if (take_true) {
              Item other{state, frames, path, true, assume_false};
              stack.push_back(std::move(other));
              Flow flow = visitor.on_branch(state, ctx, node, true, true);
              if (flow == Flow::Prune) {
                alive = false;
                break;
              }
              if (node.loop_header) {
                int& count = frame.loop_counts[node.id];
                ++count;
                int& seen = path.loop_iterations[detail::loop_key(frame)];
                seen = std::max(seen, count);
              }
              path.decisions.push_back(true);
              frame.node = node.succ[0];
            } else {
              Flow flow = visitor.on_branch(state, ctx, node, false, assume_false);
              if (flow == Flow::Prune) { alive = false; break; }
              frame.loop_counts.erase(node.id);
              path.decisions.push_back(false);
              frame.node = node.succ[1];
            }
            break;
          }
        }
      }
    } catch (const PathAbandoned& abandoned) {
      visitor.on_abandon(state, path, abandoned);
    }
  }
}

}  // namespace guardfix::cfg
