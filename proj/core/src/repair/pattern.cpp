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
#include "guardfix/repair/pattern.hpp"

#include <fstream>
#include <regex>

#include "guardfix/support/text.hpp"

namespace guardfix::repair {

using frontend::AssignOp;
using frontend::BinaryOp;
using frontend::Expr;
using frontend::ExprKind;
using frontend::Stmt;
using frontend::StmtKind;

extern const char* const kDefaultPatternPool;

std::string to_string(HandlerVariant variant) { return variant == HandlerVariant::V1 ? "v1" : "v2"; }

HandlerVariant handler_variant_from_string(const std::string& text) {
  if (text == "v1") return HandlerVariant::V1;
  if (text == "v2") return HandlerVariant::V2;
  throw Error("unknown handler variant '" + text + "'");
}

PatternPool parse_pattern_pool(const nlohmann::json& j) {
  try {
    PatternPool pool;
    for (const auto& [key, text] : j.at("handlers").items()) {
      pool.handlers[handler_variant_from_string(key)] = text.get<std::string>();
    }
    for (const auto& p : j.at("patterns")) {
      RepairPattern pattern;
      pattern.id = p.at("id").get<std::string>();
      pattern.guard = p.at("guard").get<std::string>();
      if (pattern.guard != "square" && pattern.guard != "additive" && pattern.guard != "multiplicative") {
        throw MalformedPatternPool("pattern " + pattern.id + ": unknown guard '" + pattern.guard + "'");
      }
      pattern.handler = handler_variant_from_string(p.value("handler", "v2"));
      for (const auto& prop : p.at("properties")) {
        PatternProperty property;
        property.fact = prop.at("fact").get<std::string>();
        if (prop.contains("in")) property.any_of = prop.at("in").get<std::vector<std::string>>();
        if (prop.contains("equals")) property.equals = prop.at("equals").get<bool>();
        pattern.properties.push_back(std::move(property));
      }
      pattern.templates = p.at("templates").get<std::map<std::string, std::string>>();
      pool.patterns.push_back(std::move(pattern));
    }
    if (pool.patterns.empty()) throw MalformedPatternPool("pattern pool is empty");
    return pool;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedPatternPool(std::string("pattern pool: ") + e.what());
  }
}

PatternPool load_pattern_pool(const std::string& path) {
  try {
    return parse_pattern_pool(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedPatternPool(path + ": " + e.what());
  }
}

const PatternPool& default_pattern_pool() {
  static const PatternPool pool = parse_pattern_pool(nlohmann::json::parse(kDefaultPatternPool));
  return pool;
}

namespace {

std::optional<Integer> constant_value(const Expr& e) {
  if (e.kind == ExprKind::IntLiteral || e.kind == ExprKind::LimitMacro) return e.value;
  if (e.kind == ExprKind::Unary && e.unary_op == frontend::UnaryOp::Neg) {
    if (auto v = constant_value(*e.operands[0])) return -*v;
  }
  return std::nullopt;
}

bool has_call(const Expr& e) {
  if (e.kind == ExprKind::Call) return true;
  for (const auto& op : e.operands) {
    if (has_call(*op)) return true;
  }
  return false;
}

std::string squeeze(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::string operand_text(const Expr& e, const frontend::TranslationUnit& unit) {
  std::string text(unit.text(e.span));
  bool simple = e.kind == ExprKind::IntLiteral || e.kind == ExprKind::LimitMacro ||
                e.kind == ExprKind::VarRef || e.kind == ExprKind::Member || e.kind == ExprKind::Call;
  return simple ? text : "(" + text + ")";
}

}  // namespace

SiteShape site_shape(const Stmt& stmt, const frontend::TranslationUnit& unit) {
  SiteShape shape;
  const Expr* rhs = nullptr;
  if (stmt.kind == StmtKind::Decl) {
    if (!stmt.decl.init) throw NoApplicablePattern("declaration without initializer");
    rhs = stmt.decl.init.get();
    shape.target_text = stmt.decl.name;
    std::string_view full = unit.text(stmt.span);
    std::size_t head = rhs->span.begin.offset - stmt.span.begin.offset;
    std::string decl(full.substr(0, head));
    while (!decl.empty() && (std::isspace(static_cast<unsigned char>(decl.back())) || decl.back() == '=')) {
      decl.pop_back();
    }
    shape.declaration = decl + ";";
    shape.assignment_text = shape.target_text + " = " + std::string(unit.text(rhs->span)) + ";";
  } else if (stmt.kind == StmtKind::Assign) {
    shape.target_text = std::string(unit.text(stmt.target->span));
    shape.assignment_text = std::string(unit.text(stmt.span));
    if (stmt.assign_op != AssignOp::Assign) {
      shape.lhs_text = shape.target_text;
      shape.has_side_effects = has_call(*stmt.target);
      switch (stmt.assign_op) {
        case AssignOp::AddAssign: shape.op = '+'; break;
        case AssignOp::SubAssign: shape.op = '-'; break;
        case AssignOp::MulAssign: shape.op = '*'; break;
        case AssignOp::DivAssign: shape.op = '/'; break;
        case AssignOp::Increment: shape.op = '+'; break;
        case AssignOp::Decrement: shape.op = '-'; break;
        default: break;
      }
      if (stmt.assign_op == AssignOp::Increment || stmt.assign_op == AssignOp::Decrement) {
        shape.rhs_text = "1";
        shape.rhs_constant = Integer(1);
      } else {
        shape.rhs_text = operand_text(*stmt.value, unit);
        shape.rhs_constant = constant_value(*stmt.value);
        shape.has_side_effects = shape.has_side_effects || has_call(*stmt.value);
      }
      shape.operands_equal = squeeze(shape.lhs_text) == squeeze(shape.rhs_text);
      return shape;
    }
    rhs = stmt.value.get();
  } else {
    throw NoApplicablePattern("statement is not an assignment");
  }

  if (rhs->kind == ExprKind::Binary && frontend::is_arithmetic(rhs->binary_op)) {
    static const std::map<BinaryOp, char> ops = {
        {BinaryOp::Add, '+'}, {BinaryOp::Sub, '-'}, {BinaryOp::Mul, '*'}, {BinaryOp::Div, '/'}};
    shape.op = ops.at(rhs->binary_op);
    shape.lhs_text = operand_text(*rhs->operands[0], unit);
    shape.rhs_text = operand_text(*rhs->operands[1], unit);
    shape.lhs_constant = constant_value(*rhs->operands[0]);
    shape.rhs_constant = constant_value(*rhs->operands[1]);
  } else if (rhs->kind == ExprKind::Unary && rhs->unary_op == frontend::UnaryOp::Neg) {
    shape.op = '-';
    shape.lhs_text = "0";
    shape.lhs_constant = Integer(0);
    shape.rhs_text = operand_text(*rhs->operands[0], unit);
    shape.rhs_constant = constant_value(*rhs->operands[0]);
  } else {
    throw NoApplicablePattern("right-hand side is not arithmetic");
  }
  shape.has_side_effects = has_call(*rhs);
  shape.operands_equal = squeeze(shape.lhs_text) == squeeze(shape.rhs_text);
  return shape;
}

int score(const RepairPattern& pattern, const SiteShape& shape) {
  int s = 0;
  for (const auto& p : pattern.properties) {
    std::string value;
    if (p.fact == "operator") value = std::string(1, shape.op);
    else if (p.fact == "operands_equal") value = shape.operands_equal ? "true" : "false";
    else if (p.fact == "constant_operand") {
      value = shape.lhs_constant || shape.rhs_constant ? "true" : "false";
    } else if (p.fact == "operand_count") {
      value = shape.lhs_text == "0" && shape.lhs_constant && *shape.lhs_constant == 0 ? "1" : "2";
    } else {
      continue;
    }
    bool ok = true;
    if (!p.any_of.empty()) ok = std::find(p.any_of.begin(), p.any_of.end(), value) != p.any_of.end();
    if (p.equals) ok = ok && value == (*p.equals ? "true" : "false");
    s += ok ? 1 : 0;
  }
  return s;
}

const RepairPattern& select_pattern(const SiteShape& shape, const PatternPool& pool) {
  const RepairPattern* best = nullptr;
  int best_score = 0;
  for (const auto& p : pool.patterns) {
    int s = score(p, shape);
    if (s > best_score) {
      best = &p;
      best_score = s;
    }
  }
  if (!best) throw NoApplicablePattern("no pattern matches '" + shape.assignment_text + "'");
  return *best;
}

std::string substitute(const std::string& text, const std::map<std::string, std::string>& bindings) {
  static const std::regex placeholder(R"(\{([A-Za-z_][A-Za-z0-9_]*)\})");
  std::string out;
  auto begin = std::sregex_iterator(text.begin(), text.end(), placeholder);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    auto found = bindings.find(m[1].str());
    if (found == bindings.end()) throw UnboundPlaceholder(m[1].str());
    out.append(text, last, static_cast<std::size_t>(m.position(0)) - last);
    out += found->second;
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
  }
  out.append(text, last, std::string::npos);
  return out;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = trunc_div(a, b);
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q = trunc_div(a, b);
  if (q * b != a && ((a < 0) == (b < 0))) q += 1;
  return q;
}

std::string literal(const Integer& v) { return guardfix::to_string(v); }

struct Binding {
  std::string key;
  std::string s1;
  std::string s2;
  Integer value4;
  Integer value5;
};

/// Exact range of the variable operand `x` such that the operation stays in [lo, hi].
Binding bind(const std::string& guard, const SiteShape& shape, const symexec::BoundInfo& bound) {
  const Integer& hi = bound.upper_value;
  const Integer& lo = bound.lower_value;
  if (shape.lhs_constant && shape.rhs_constant) throw NoApplicablePattern("both operands are constant");
  if (guard == "square") {
    if (shape.op != '*' || !shape.operands_equal) throw NoApplicablePattern("not a square");
    Integer r = isqrt(hi);
    return {"range", shape.lhs_text, "", r, bound.is_unsigned() ? Integer(0) : Integer(-r)};
  }
  bool const_right = shape.rhs_constant.has_value();
  bool const_left = shape.lhs_constant.has_value();
  const std::string& var = const_right ? shape.lhs_text : shape.rhs_text;
  if (guard == "additive") {
    if (shape.op != '+' && shape.op != '-') throw NoApplicablePattern("not additive");
    if (const_right) {
      Integer c = shape.op == '+' ? *shape.rhs_constant : Integer(-*shape.rhs_constant);
      return {"range", var, "", hi - c, lo - c};
    }
    if (const_left) {
      const Integer& c = *shape.lhs_constant;
      if (shape.op == '+') return {"range", var, "", hi - c, lo - c};
      return {"range", var, "", c - lo, c - hi};
    }
    return {shape.op == '+' ? "add" : "sub", shape.lhs_text, shape.rhs_text, hi, lo};
  }
  if (shape.op != '*' && shape.op != '/') throw NoApplicablePattern("not multiplicative");
  if (shape.op == '*' && (const_right || const_left)) {
    Integer c = const_right ? *shape.rhs_constant : *shape.lhs_constant;
    if (c == 0) throw NoApplicablePattern("multiplication by zero cannot overflow");
    if (c > 0) return {"range", var, "", floor_div(hi, c), ceil_div(lo, c)};
    return {"range", var, "", floor_div(lo, c), ceil_div(hi, c)};
  }
  if (shape.op == '/' && const_right) {
    Integer c = *shape.rhs_constant;
    if (c == 0) throw NoApplicablePattern("division by zero");
    Integer d = c > 0 ? c : Integer(-c);
    // trunc(x / d) in [a, b] (a <= 0 <= b) iff x in [a*d - (d-1), b*d + (d-1)].
    Integer a = c > 0 ? lo : Integer(-hi);
    Integer b = c > 0 ? hi : Integer(-lo);
    return {"range", var, "", b * d + (d - 1), a * d - (d - 1)};
  }
  return {shape.op == '*' ? "mul" : "div", shape.lhs_text, shape.rhs_text, hi, lo};
}

}  // namespace

Instantiation instantiate_pattern(const RepairPattern& pattern, const SiteShape& shape,
                                  const symexec::BoundInfo& bound, const ReportMeta& meta,
                                  const PatternPool& pool, std::optional<HandlerVariant> handler) {
  if (shape.has_side_effects) throw NoApplicablePattern("operands contain calls");
  Binding b = bind(pattern.guard, shape, bound);
  auto tmpl = pattern.templates.find(b.key);
  if (tmpl == pattern.templates.end()) {
    throw NoApplicablePattern("pattern " + pattern.id + " has no '" + b.key + "' template");
  }
  auto handler_text = pool.handlers.find(handler.value_or(pattern.handler));
  if (handler_text == pool.handlers.end()) throw NoApplicablePattern("pattern pool lacks the handler");

  Instantiation inst;
  inst.template_key = b.key;
  inst.bindings = {{"s1", b.s1},
                   {"value4", literal(b.value4)},
                   {"value5", literal(b.value5)},
                   {"buggyStm10", shape.assignment_text},
                   {"FileName", meta.file},
                   {"IO_ID", meta.problem_id},
                   {"LineNumber", std::to_string(meta.line)}};
  if (!b.s2.empty()) inst.bindings["s2"] = b.s2;
  auto with_handler = inst.bindings;
  with_handler["handler"] = substitute(handler_text->second, inst.bindings);
  inst.code = substitute(tmpl->second, with_handler);
  return inst;
}

}  // namespace guardfix::repair
