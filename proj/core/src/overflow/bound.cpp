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
#include "guardfix/overflow/bound.hpp"

#include <cctype>
#include <filesystem>
#include <functional>
#include <vector>

#include "guardfix/frontend/int_kind.hpp"
#include "guardfix/support/text.hpp"

namespace guardfix::overflow {

namespace {

struct UnknownIdentifier {};

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::map<std::string, Integer>& known, std::size_t line)
      : text_(text), known_(known), line_(line) {}

  Integer parse() {
    Integer v = additive();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw MalformedLimitsFile(line_, what); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer additive() {
    Integer v = multiplicative();
    while (true) {
      if (eat('+')) v += multiplicative();
      else if (eat('-')) v -= multiplicative();
      else return v;
    }
  }

  Integer multiplicative() {
    Integer v = unary();
    while (eat('*')) v *= unary();
    return v;
  }

  Integer unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  Integer primary() {
    skip();
    if (pos_ >= text_.size()) fail("missing operand");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Integer v = additive();
      if (!eat(')')) fail("unbalanced parentheses");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      auto it = known_.find(std::string(text_.substr(start, pos_ - start)));
      if (it == known_.end()) throw UnknownIdentifier{};
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Integer number() {
    Integer v = 0;
    int base = 10;
    if (text_[pos_] == '0' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == 'x' || text_[pos_ + 1] == 'X')) {
      base = 16;
      pos_ += 2;
    }
    std::size_t digits = 0;
    while (pos_ < text_.size()) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_])));
      int d = -1;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      if (d < 0) break;
      v = v * base + d;
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail("malformed number");
    while (pos_ < text_.size() && (text_[pos_] == 'u' || text_[pos_] == 'U' || text_[pos_] == 'l' ||
                                   text_[pos_] == 'L')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail("malformed number");
    }
    return v;
  }

  std::string_view text_;
  const std::map<std::string, Integer>& known_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string strip_comments(std::string_view text) {
  std::string out;
  bool block = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (block) {
      if (text[i] == '*' && i + 1 < text.size() && text[i + 1] == '/') {
        block = false;
        ++i;
        out += ' ';
      } else if (text[i] == '\n') {
        out += '\n';
      }
      continue;
    }
    if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      block = true;
      ++i;
      continue;
    }
    if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) out += '\n';
      continue;
    }
    out += text[i];
  }
  return out;
}

void visit_exprs(const frontend::Expr* e, const std::function<void(const frontend::Expr&)>& f) {
  if (!e) return;
  f(*e);
  for (const auto& op : e->operands) visit_exprs(op.get(), f);
}

void visit_stmt(const frontend::Stmt* s, const std::function<void(const frontend::Expr&)>& f) {
  if (!s) return;
  visit_exprs(s->decl.init.get(), f);
  visit_exprs(s->target.get(), f);
  visit_exprs(s->value.get(), f);
  visit_exprs(s->cond.get(), f);
  visit_stmt(s->init.get(), f);
  visit_stmt(s->then_branch.get(), f);
  visit_stmt(s->else_branch.get(), f);
  visit_stmt(s->body.get(), f);
  visit_stmt(s->step.get(), f);
  for (const auto& c : s->children) visit_stmt(c.get(), f);
}

}  // namespace

std::map<std::string, Integer> parse_limits(std::string_view raw) {
  std::string text = strip_comments(raw);
  std::map<std::string, Integer> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    std::size_t first_line = ++line_no;
    // Join continuation lines.
    while (!line.empty() && line.back() == '\\' && end < text.size()) {
      line.pop_back();
      pos = end + 1;
      end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      line += text.substr(pos, end - pos);
      ++line_no;
    }
    pos = end + 1;

    std::size_t i = 0;
    auto skip = [&] {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    };
    skip();
    if (i >= line.size() || line[i] != '#') continue;
    ++i;
    skip();
    if (line.compare(i, 6, "define") != 0) continue;
    i += 6;
    if (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) continue;
    skip();
    std::size_t name_start = i;
    while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) ++i;
    std::string name = line.substr(name_start, i - name_start);
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) {
      throw MalformedLimitsFile(first_line, "missing macro name");
    }
    if (i < line.size() && line[i] == '(') continue;  // function-like macro
    std::string body = line.substr(i);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out[name] = ExprParser(body, out, first_line).parse();
    } catch (const UnknownIdentifier&) {
      continue;
    }
  }
  return out;
}

BoundInfo bound_for_macro(const std::string& macro, BoundOrigin origin) {
  auto value = frontend::limit_macro_value(macro);
  if (!value) throw Error("unsupported limits macro: " + macro);
  BoundInfo b;
  b.macro = macro;
  b.upper_value = *value;
  b.lower_value = macro == "UINT_MAX" ? Integer(0) : Integer(-*value);
  b.origin = origin;
  return b;
}

BoundInfo discover_upper_bound(const frontend::TranslationUnit& program,
                               const std::string& limits_path) {
  const frontend::Expr* first = nullptr;
  auto consider = [&](const frontend::Expr& e) {
    if (e.kind != frontend::ExprKind::LimitMacro) return;
    if (!first || e.span.begin.offset < first->span.begin.offset) first = &e;
  };
  for (const auto& item : program.items) {
    if (item.kind == frontend::ItemKind::Global) visit_exprs(item.global.init.get(), consider);
    if (item.kind == frontend::ItemKind::Function) visit_stmt(item.function.body.get(), consider);
  }
  std::string macro = first ? first->text : "INT_MAX";
  BoundInfo bound = bound_for_macro(macro, first ? BoundOrigin::ProgramUsage : BoundOrigin::Default);

  if (!limits_path.empty() && std::filesystem::exists(limits_path)) {
    auto defs = parse_limits(read_file(limits_path));
    if (auto it = defs.find(macro); it != defs.end()) {
      bound.upper_value = it->second;
      bound.lower_value = macro == "UINT_MAX" ? Integer(0) : Integer(-it->second);
      if (first) bound.origin = BoundOrigin::LimitsFile;
    }
    static const std::map<std::string, std::string> minimum = {
        {"CHAR_MAX", "CHAR_MIN"}, {"SHRT_MAX", "SHRT_MIN"}, {"INT_MAX", "INT_MIN"},
        {"LLONG_MAX", "LLONG_MIN"}};
    if (auto m = minimum.find(macro); m != minimum.end()) {
      if (auto it = defs.find(m->second); it != defs.end()) bound.file_minimum = it->second;
    }
  }
  return bound;
}

}  // namespace guardfix::overflow
