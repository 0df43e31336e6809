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
#include "guardfix/symexec/encode.hpp"

namespace guardfix::symexec {

using frontend::AssignOp;
using frontend::BinaryOp;
using frontend::Expr;
using frontend::ExprKind;
using frontend::IntKind;
using frontend::Stmt;
using frontend::StmtKind;
using frontend::UnaryOp;
using frontend::ValueCategory;
using frontend::VarScope;

namespace {

IntKind kind_of(const Expr& e) {
  if (e.declared_type && e.declared_type->is_integer()) return e.declared_type->int_kind;
  return e.type;
}

// Placeholder for values the integer model does not track (pointers, strings).
smt::Term opaque(PathState& state, const EncodeContext& ctx) {
  return state.fresh(ctx.prefix + "$opaque", frontend::IntKindId::Int64, false).term();
}

SymVar fresh_with_range(PathState& state, const std::string& base, IntKind store_kind,
                        IntKind range_kind, const std::optional<Integer>& min_override) {
  SymVar v = state.define(base, store_kind);
  Integer lo = min_override ? *min_override : range_kind.min_value();
  state.add(smt::definition_group(),
            smt::conjunction({smt::relation(smt::RelOp::Ge, v.term(), smt::constant(lo)),
                              smt::relation(smt::RelOp::Le, v.term(),
                                            smt::constant(range_kind.max_value()))}));
  return v;
}

smt::Term read_variable(const Expr& e, PathState& state, const EncodeContext& ctx) {
  auto name = storage_name(e, ctx);
  if (!name) {
    // Through a pointer: every read is a fresh value of the pointee kind.
    return state.fresh(ctx.prefix + "$mem", kind_of(e)).term();
  }
  if (const SymVar* v = state.current(*name)) return v->term();
  return state.fresh(*name, kind_of(e)).term();
}

smt::Term boolean_value(const smt::Formula& f, PathState& state, const EncodeContext& ctx) {
  SymVar b = state.define(ctx.prefix + "$cond", frontend::IntKindId::Int);
  state.add(smt::definition_group(),
            smt::disjunction(
                {smt::conjunction({smt::relation(smt::RelOp::Eq, b.term(), smt::constant(1)), f}),
                 smt::conjunction({smt::relation(smt::RelOp::Eq, b.term(), smt::constant(0)),
                                   smt::negation(f)})}));
  return b.term();
}

smt::Term divide(smt::Term a, smt::Term b, PathState& state) {
  state.add(smt::path_condition_group(), smt::relation(smt::RelOp::Ne, b, smt::constant(0)));
  return smt::div(std::move(a), std::move(b));
}

smt::RelOp rel_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return smt::RelOp::Lt;
    case BinaryOp::Le: return smt::RelOp::Le;
    case BinaryOp::Gt: return smt::RelOp::Gt;
    case BinaryOp::Ge: return smt::RelOp::Ge;
    case BinaryOp::Eq: return smt::RelOp::Eq;
    default: return smt::RelOp::Ne;
  }
}

const FunctionSummary* fresh_summary_call(const Expr* e, const EncodeContext& ctx) {
  if (!e || e->kind != ExprKind::Call || ctx.cfg->call_temp(e) || !ctx.summaries) return nullptr;
  const FunctionSummary* s = ctx.summaries->find(e->text);
  if (!s || s->effect != SummaryEffect::FreshReturn || !s->return_kind) return nullptr;
  return s;
}

}  // namespace

std::string return_slot(const std::string& prefix) { return prefix + "$return"; }

std::optional<std::string> storage_name(const Expr& lvalue, const EncodeContext& ctx) {
  switch (lvalue.kind) {
    case ExprKind::VarRef:
      if (lvalue.scope == VarScope::Global) return lvalue.text;
      if (lvalue.scope == VarScope::Builtin) return std::nullopt;
      return ctx.prefix + lvalue.text;
    case ExprKind::Member: {
      if (lvalue.arrow) return std::nullopt;
      auto base = storage_name(*lvalue.operands[0], ctx);
      if (!base) return std::nullopt;
      return *base + "." + lvalue.text;
    }
    default:
      return std::nullopt;
  }
}

namespace {

bool has_side_conditions(const Expr& e) {
  if (e.kind == ExprKind::Call) return true;
  if (e.kind == ExprKind::Binary && e.binary_op == frontend::BinaryOp::Div) return true;
  for (const auto& op : e.operands) {
    if (has_side_conditions(*op)) return true;
  }
  return false;
}

}  // namespace

std::optional<smt::Term> apply_summary(const Expr& call, PathState& state, const EncodeContext& ctx) {
  const FunctionSummary* s = ctx.summaries ? ctx.summaries->find(call.text) : nullptr;
  if (!s) throw MissingSummary(call.text);
  for (const auto& arg : call.operands) {
    bool observable = s->effect != SummaryEffect::NoEffect || has_side_conditions(*arg);
    if (observable && arg->category == ValueCategory::Integer) translate(*arg, state, ctx);
  }
  switch (s->effect) {
    case SummaryEffect::Terminate:
      throw PathTerminated{};
    case SummaryEffect::NoEffect:
      return std::nullopt;
    case SummaryEffect::ConstantReturn: {
      SymVar v = state.define(ctx.prefix + "$ret", s->return_kind.value_or(frontend::IntKindId::Int));
      state.define_equal(v, smt::constant(s->constant));
      return v.term();
    }
    case SummaryEffect::FreshOutArgs:
      for (const auto& arg : call.operands) {
        if (arg->kind != ExprKind::Unary || arg->unary_op != UnaryOp::AddressOf) continue;
        const Expr& target = *arg->operands[0];
        if (target.category != ValueCategory::Integer) continue;
        if (auto name = storage_name(target, ctx)) state.fresh(*name, kind_of(target));
      }
      [[fallthrough]];
    case SummaryEffect::FreshReturn: {
      IntKind k = s->return_kind.value_or(frontend::IntKindId::Int);
      return fresh_with_range(state, ctx.prefix + "$ret", k, k, s->return_min).term();
    }
  }
  return std::nullopt;
}

smt::Term translate(const Expr& e, PathState& state, const EncodeContext& ctx) {
  switch (e.kind) {
    case ExprKind::IntLiteral:
    case ExprKind::LimitMacro:
      return smt::constant(e.value);
    case ExprKind::StringLiteral:
      return opaque(state, ctx);
    case ExprKind::VarRef:
      if (e.scope == VarScope::Builtin) return smt::constant(0);
      if (e.category != ValueCategory::Integer) return opaque(state, ctx);
      return read_variable(e, state, ctx);
    case ExprKind::Member:
      if (e.category != ValueCategory::Integer) return opaque(state, ctx);
      return read_variable(e, state, ctx);
    case ExprKind::Call: {
      if (const std::string* temp = ctx.cfg->call_temp(&e)) {
        if (const SymVar* v = state.current(ctx.prefix + *temp)) return v->term();
        return state.fresh(ctx.prefix + *temp, e.type).term();
      }
      auto result = apply_summary(e, state, ctx);
      return result ? *result : smt::constant(0);
    }
    case ExprKind::Unary:
      switch (e.unary_op) {
        case UnaryOp::Neg: return smt::neg(translate(*e.operands[0], state, ctx));
        case UnaryOp::Not: return boolean_value(translate_condition(e, state, ctx), state, ctx);
        case UnaryOp::Deref:
          if (e.category != ValueCategory::Integer) return opaque(state, ctx);
          return state.fresh(ctx.prefix + "$mem", e.type).term();
        case UnaryOp::AddressOf:
          return opaque(state, ctx);
      }
      break;
    case ExprKind::Binary: {
      if (frontend::is_comparison(e.binary_op) || frontend::is_logical(e.binary_op)) {
        return boolean_value(translate_condition(e, state, ctx), state, ctx);
      }
      if (e.category != ValueCategory::Integer) {
        for (const auto& op : e.operands) {
          if (op->category == ValueCategory::Integer) translate(*op, state, ctx);
        }
        return opaque(state, ctx);
      }
      smt::Term a = translate(*e.operands[0], state, ctx);
      smt::Term b = translate(*e.operands[1], state, ctx);
      switch (e.binary_op) {
        case BinaryOp::Add: return smt::add(a, b);
        case BinaryOp::Sub: return smt::sub(a, b);
        case BinaryOp::Mul: return smt::mul(a, b);
        case BinaryOp::Div: return divide(a, b, state);
        default: break;
      }
      break;
    }
  }
  throw UnsupportedExpression("expression", e.span);
}

smt::Formula translate_condition(const Expr& e, PathState& state, const EncodeContext& ctx) {
  if (e.kind == ExprKind::Binary) {
    if (e.binary_op == BinaryOp::LogicalAnd || e.binary_op == BinaryOp::LogicalOr) {
      smt::Formula a = translate_condition(*e.operands[0], state, ctx);
      smt::Formula b = translate_condition(*e.operands[1], state, ctx);
      return e.binary_op == BinaryOp::LogicalAnd ? smt::conjunction({a, b})
                                                  : smt::disjunction({a, b});
    }
    if (frontend::is_comparison(e.binary_op)) {
      smt::Term a = translate(*e.operands[0], state, ctx);
      smt::Term b = translate(*e.operands[1], state, ctx);
      return smt::relation(rel_of(e.binary_op), a, b);
    }
  }
  if (e.kind == ExprKind::Unary && e.unary_op == UnaryOp::Not) {
    return smt::negation(translate_condition(*e.operands[0], state, ctx));
  }
  return smt::relation(smt::RelOp::Ne, translate(e, state, ctx), smt::constant(0));
}

namespace {

bool integer_lvalue(const Expr& target) {
  return target.category == ValueCategory::Integer;
}

SymVar define_target(const Expr& target, PathState& state, const EncodeContext& ctx) {
  auto name = storage_name(target, ctx);
  return state.define(name ? *name : ctx.prefix + "$mem", kind_of(target));
}

}  // namespace

EncodedStatement encode_statement(const Stmt& stmt, PathState& state, const EncodeContext& ctx) {
  EncodedStatement out;
  switch (stmt.kind) {
    case StmtKind::Decl: {
      const auto& d = stmt.decl;
      std::string name = ctx.prefix + d.name;
      if (!d.type.is_integer()) {
        if (d.init && d.init->category == ValueCategory::Integer) translate(*d.init, state, ctx);
        return out;
      }
      if (!d.init) {
        state.forget(name);
        return out;
      }
      out.rhs = d.init.get();
      if (const FunctionSummary* s = fresh_summary_call(d.init.get(), ctx)) {
        out.defined = fresh_with_range(state, name, d.type.int_kind, *s->return_kind, s->return_min);
        return out;
      }
      smt::Term value = translate(*d.init, state, ctx);
      SymVar v = state.define(name, d.type.int_kind);
      state.define_equal(v, value);
      out.defined = v;
      return out;
    }
    case StmtKind::Assign: {
      const Expr& target = *stmt.target;
      if (!integer_lvalue(target)) {
        if (stmt.value && stmt.value->category == ValueCategory::Integer) {
          translate(*stmt.value, state, ctx);
        }
        return out;
      }
      out.rhs = stmt.value.get();
      if (stmt.assign_op == AssignOp::Assign) {
        if (const FunctionSummary* s = fresh_summary_call(stmt.value.get(), ctx)) {
          auto name = storage_name(target, ctx);
          out.defined = fresh_with_range(state, name ? *name : ctx.prefix + "$mem", kind_of(target),
                                         *s->return_kind, s->return_min);
          return out;
        }
        smt::Term value = translate(*stmt.value, state, ctx);
        SymVar v = define_target(target, state, ctx);
        state.define_equal(v, value);
        out.defined = v;
        return out;
      }
      smt::Term old = translate(target, state, ctx);
      smt::Term value;
      switch (stmt.assign_op) {
        case AssignOp::AddAssign: value = smt::add(old, translate(*stmt.value, state, ctx)); break;
        case AssignOp::SubAssign: value = smt::sub(old, translate(*stmt.value, state, ctx)); break;
        case AssignOp::MulAssign: value = smt::mul(old, translate(*stmt.value, state, ctx)); break;
        case AssignOp::DivAssign: value = divide(old, translate(*stmt.value, state, ctx), state); break;
        case AssignOp::Increment: value = smt::add(old, smt::constant(1)); break;
        case AssignOp::Decrement: value = smt::sub(old, smt::constant(1)); break;
        case AssignOp::Assign: break;
      }
      SymVar v = define_target(target, state, ctx);
      state.define_equal(v, value);
      out.defined = v;
      return out;
    }
    case StmtKind::ExprStmt:
      if (stmt.value) {
        if (stmt.value->kind == ExprKind::Call || stmt.value->category == ValueCategory::Integer) {
          translate(*stmt.value, state, ctx);
        }
      }
      return out;
    case StmtKind::Return: {
      if (!stmt.value || stmt.value->category != ValueCategory::Integer) return out;
      smt::Term value = translate(*stmt.value, state, ctx);
      if (!ctx.prefix.empty()) {
        SymVar r = state.define(return_slot(ctx.prefix), stmt.value->type);
        state.define_equal(r, value);
      }
      return out;
    }
    default:
      throw UnsupportedExpression("statement", stmt.span);
  }
}

Feasibility validate_pending(PathState& state, smt::SmtSolver& solver) {
  auto& pending = state.unvalidated();
  if (pending.empty()) return Feasibility::Feasible;
  std::set<std::string> seeds;
  for (std::uint32_t id : pending) {
    const auto& c = state.constraints()[id];
    seeds.insert(c.symbols.begin(), c.symbols.end());
  }
  pending.clear();
  smt::Verdict v = solver.check_sat(state.slice(seeds));
  return v.is_unsat() ? Feasibility::Infeasible : Feasibility::Feasible;
}

Feasibility validate_branch(PathState& state, const Expr& condition, bool taken,
                            const EncodeContext& ctx, smt::SmtSolver& solver) {
  smt::Formula f = translate_condition(condition, state, ctx);
  if (!taken) {
    if (f->op == smt::FormulaOp::Rel) {
      f = smt::relation(smt::negate(f->rel), f->lhs, f->rhs);
    } else {
      f = smt::negation(f);
    }
  }
  state.add(smt::path_condition_group(), f);
  return validate_pending(state, solver);
}

}  // namespace guardfix::symexec
