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
#include <memory>
#include <string>
#include <vector>

#include "guardfix/frontend/ast.hpp"

namespace guardfix::cfg {

using NodeId = std::uint32_t;

enum class NodeKind { Entry, Exit, Statement, Branch, Call };

std::string_view to_string(NodeKind kind);

struct CfgNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::Statement;
  /// Statement: the Decl/Assign/ExprStmt/Return. Branch: the owning If/While/For.
  const frontend::Stmt* stmt = nullptr;
  /// Branch condition; null means the constant true of `for (;;)`.
  const frontend::Expr* cond = nullptr;
  /// Call: the hoisted user-function call and the temporary holding its result.
  const frontend::Expr* call = nullptr;
  std::string temp;
  bool loop_header = false;
  /// One successor for Entry/Statement/Call, [true, false] for Branch, none for Exit.
  std::vector<NodeId> succ;
  frontend::Span span;
};

class Cfg {
 public:
  const std::string& function() const { return function_; }
  const frontend::FunctionDecl& decl() const { return *decl_; }
  const frontend::TranslationUnit& unit() const { return *unit_; }
  NodeId entry() const { return entry_; }
  NodeId exit() const { return exit_; }
  const std::vector<CfgNode>& nodes() const { return nodes_; }
  const CfgNode& node(NodeId id) const { return nodes_[id]; }

  std::size_t edge_count() const;
  std::size_t branch_count() const;

  /// Temporary that holds the value of a hoisted user call, or null.
  const std::string* call_temp(const frontend::Expr* call) const;

  /// One line per node: id, kind, line:col span, successors.
  std::string dump() const;

 private:
  friend class CfgBuilder;

  std::string function_;
  const frontend::FunctionDecl* decl_ = nullptr;
  const frontend::TranslationUnit* unit_ = nullptr;
  std::vector<CfgNode> nodes_;
  NodeId entry_ = 0;
  NodeId exit_ = 0;
  std::map<const frontend::Expr*, std::string> call_temps_;
};

/// User calls (callees defined in the same unit) inside statement expressions
/// are hoisted into Call nodes ahead of the statement, in evaluation order.
Cfg build_cfg(const frontend::FunctionDecl& function, const frontend::TranslationUnit& unit);

/// CFGs for every function definition of a unit, keyed by name.
class CfgSet {
 public:
  explicit CfgSet(std::shared_ptr<const frontend::TranslationUnit> unit);

  const frontend::TranslationUnit& unit() const { return *unit_; }
  const Cfg* find(std::string_view name) const;
  const std::vector<std::unique_ptr<Cfg>>& all() const { return cfgs_; }

  /// Definitions not called by any other definition, in source order.
  std::vector<const Cfg*> roots() const;

 private:
  std::shared_ptr<const frontend::TranslationUnit> unit_;
  std::vector<std::unique_ptr<Cfg>> cfgs_;
};

}  // namespace guardfix::cfg
