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
#include "guardfix/cfg/cfg.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace guardfix::cfg {

using frontend::Expr;
using frontend::ExprKind;
using frontend::Stmt;
using frontend::StmtKind;

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Entry: return "entry";
    case NodeKind::Exit: return "exit";
    case NodeKind::Statement: return "stmt";
    case NodeKind::Branch: return "branch";
    case NodeKind::Call: return "call";
  }
  return "stmt";
}

std::size_t Cfg::edge_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) n += node.succ.size();
  return n;
}

std::size_t Cfg::branch_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) n += node.kind == NodeKind::Branch;
  return n;
}

const std::string* Cfg::call_temp(const Expr* call) const {
  auto it = call_temps_.find(call);
  return it == call_temps_.end() ? nullptr : &it->second;
}

std::string Cfg::dump() const {
  std::ostringstream out;
  for (const auto& node : nodes_) {
    out << node.id << ' ' << to_string(node.kind) << ' ' << node.span.begin.line << ':'
        << node.span.begin.column;
    if (node.loop_header) out << " loop";
    if (node.kind == NodeKind::Call) out << ' ' << node.temp;
    out << " ->";
    for (NodeId s : node.succ) out << ' ' << s;
    out << '\n';
  }
  return out.str();
}

namespace {

// Open successor slot: (node, index into succ).
struct End {
  NodeId node;
  std::size_t slot;
};

void collect_user_calls(const Expr* e, const frontend::TranslationUnit& unit,
                        std::vector<const Expr*>& out) {
  if (!e) return;
  for (const auto& op : e->operands) collect_user_calls(op.get(), unit, out);
  if (e->kind == ExprKind::Call && unit.find_definition(e->text)) out.push_back(e);
}

}  // namespace

class CfgBuilder {
 public:
  CfgBuilder(const frontend::FunctionDecl& fn, const frontend::TranslationUnit& unit) {
    cfg_.function_ = fn.name;
    cfg_.decl_ = &fn;
    cfg_.unit_ = &unit;
    unit_ = &unit;
  }

  Cfg build() {
    const auto& fn = *cfg_.decl_;
    cfg_.entry_ = add(NodeKind::Entry, fn.span, 1);
    std::vector<End> ends{{cfg_.entry_, 0}};
    if (fn.body) ends = stmt(*fn.body, ends);
    cfg_.exit_ = add(NodeKind::Exit, fn.span, 0);
    connect(ends, cfg_.exit_);
    for (auto [node, slot] : returns_) cfg_.nodes_[node].succ[slot] = cfg_.exit_;
    return std::move(cfg_);
  }

 private:
  NodeId add(NodeKind kind, const frontend::Span& span, std::size_t succ) {
    CfgNode node;
    node.id = static_cast<NodeId>(cfg_.nodes_.size());
    node.kind = kind;
    node.span = span;
    node.succ.assign(succ, 0);
    cfg_.nodes_.push_back(std::move(node));
    return cfg_.nodes_.back().id;
  }

  void connect(const std::vector<End>& ends, NodeId target) {
    for (auto [node, slot] : ends) cfg_.nodes_[node].succ[slot] = target;
  }

  // Emits Call nodes for every user call in `exprs`; returns the first node
  // added (or `fallback` when nothing was hoisted) and updates `ends`.
  std::vector<End> hoist(const std::vector<const Expr*>& exprs, std::vector<End> ends,
                         NodeId* first) {
    std::vector<const Expr*> calls;
    for (const Expr* e : exprs) collect_user_calls(e, *unit_, calls);
    for (const Expr* call : calls) {
      NodeId id = add(NodeKind::Call, call->span, 1);
      auto& node = cfg_.nodes_[id];
      node.call = call;
      node.temp = "$call" + std::to_string(cfg_.call_temps_.size());
      cfg_.call_temps_[call] = node.temp;
      if (first && *first == kNone) *first = id;
      connect(ends, id);
      ends = {{id, 0}};
    }
    return ends;
  }

  std::vector<End> simple(const Stmt& s, std::vector<End> ends) {
    std::vector<const Expr*> exprs;
    switch (s.kind) {
      case StmtKind::Decl: exprs.push_back(s.decl.init.get()); break;
      case StmtKind::Assign:
        exprs.push_back(s.target.get());
        exprs.push_back(s.value.get());
        break;
      default: exprs.push_back(s.value.get()); break;
    }
    ends = hoist(exprs, std::move(ends), nullptr);
    NodeId id = add(NodeKind::Statement, s.span, 1);
    cfg_.nodes_[id].stmt = &s;
    connect(ends, id);
    if (s.kind == StmtKind::Return) {
      returns_.push_back({id, 0});
      return {};
    }
    return {{id, 0}};
  }

  std::vector<End> loop(const Stmt& s, const Expr* cond, const Stmt& body, const Stmt* step,
                        std::vector<End> ends) {
    NodeId first = kNone;
    ends = hoist({cond}, std::move(ends), &first);
    NodeId branch = add(NodeKind::Branch, s.span, 2);
    auto& node = cfg_.nodes_[branch];
    node.stmt = &s;
    node.cond = cond;
    node.loop_header = true;
    connect(ends, branch);
    if (first == kNone) first = branch;
    std::vector<End> body_ends = stmt(body, {{branch, 0}});
    if (step) body_ends = stmt(*step, body_ends);
    connect(body_ends, first);
    return {{branch, 1}};
  }

  std::vector<End> stmt(const Stmt& s, std::vector<End> ends) {
    if (ends.empty()) return ends;  // unreachable code after return
    switch (s.kind) {
      case StmtKind::Decl:
      case StmtKind::Assign:
      case StmtKind::ExprStmt:
      case StmtKind::Return:
        return simple(s, std::move(ends));
      case StmtKind::Empty:
        return ends;
      case StmtKind::Block:
        for (const auto& child : s.children) ends = stmt(*child, std::move(ends));
        return ends;
      case StmtKind::If: {
        ends = hoist({s.cond.get()}, std::move(ends), nullptr);
        NodeId branch = add(NodeKind::Branch, s.span, 2);
        cfg_.nodes_[branch].stmt = &s;
        cfg_.nodes_[branch].cond = s.cond.get();
        connect(ends, branch);
        std::vector<End> out = stmt(*s.then_branch, {{branch, 0}});
        if (s.else_branch) {
          auto other = stmt(*s.else_branch, {{branch, 1}});
          out.insert(out.end(), other.begin(), other.end());
        } else {
          out.push_back({branch, 1});
        }
        return out;
      }
      case StmtKind::While:
        return loop(s, s.cond.get(), *s.body, nullptr, std::move(ends));
      case StmtKind::For:
        if (s.init) ends = stmt(*s.init, std::move(ends));
        return loop(s, s.cond.get(), *s.body, s.step.get(), std::move(ends));
    }
    return ends;
  }

  static constexpr NodeId kNone = ~NodeId{0};

  Cfg cfg_;
  const frontend::TranslationUnit* unit_ = nullptr;
  std::vector<End> returns_;
};

Cfg build_cfg(const frontend::FunctionDecl& function, const frontend::TranslationUnit& unit) {
  return CfgBuilder(function, unit).build();
}

CfgSet::CfgSet(std::shared_ptr<const frontend::TranslationUnit> unit) : unit_(std::move(unit)) {
  for (const auto* fn : unit_->definitions()) {
    cfgs_.push_back(std::make_unique<Cfg>(build_cfg(*fn, *unit_)));
  }
}

const Cfg* CfgSet::find(std::string_view name) const {
  for (const auto& c : cfgs_) {
    if (c->function() == name) return c.get();
  }
  return nullptr;
}

std::vector<const Cfg*> CfgSet::roots() const {
  std::map<std::string, std::set<std::string>> callees;
  std::set<std::string> called;
  for (const auto& c : cfgs_) {
    for (const auto& node : c->nodes()) {
      if (node.kind != NodeKind::Call) continue;
      callees[c->function()].insert(node.call->text);
      if (node.call->text != c->function()) called.insert(node.call->text);
    }
  }
  std::vector<const Cfg*> out;
  std::set<std::string> reached;
  std::function<void(const std::string&)> reach = [&](const std::string& name) {
    if (!reached.insert(name).second) return;
    for (const auto& callee : callees[name]) reach(callee);
  };
  for (const auto& c : cfgs_) {
    if (!called.count(c->function())) {
      out.push_back(c.get());
      reach(c->function());
    }
  }
  // Functions only reachable through a call cycle get analyzed on their own.
  for (const auto& c : cfgs_) {
    if (!reached.count(c->function())) {
      out.push_back(c.get());
      reach(c->function());
    }
  }
  return out;
}

}  // namespace guardfix::cfg
