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
#include "guardfix/frontend/parser.hpp"

#include <map>
#include <set>

#include "guardfix/frontend/lexer.hpp"

namespace guardfix::frontend {

namespace {

bool is_type_start(const Token& tok) {
  if (tok.kind != TokenKind::Keyword) return false;
  static const std::set<std::string, std::less<>> kTypeWords = {
      "char", "short", "int", "unsigned", "signed", "long", "void", "struct", "int64_t", "const"};
  return kTypeWords.count(tok.text) > 0;
}

std::optional<Integer> parse_literal_value(std::string_view spelling, bool& unsigned_suffix,
                                           bool& long_suffix) {
  std::size_t end = spelling.size();
  unsigned_suffix = false;
  long_suffix = false;
  while (end > 0) {
    const char c = spelling[end - 1];
    if (c == 'u' || c == 'U') {
      unsigned_suffix = true;
    } else if (c == 'l' || c == 'L') {
      long_suffix = true;
    } else {
      break;
    }
    --end;
  }
  std::string_view digits = spelling.substr(0, end);
  if (digits.empty()) return std::nullopt;
  int base = 10;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  } else if (digits.size() > 1 && digits[0] == '0') {
    base = 8;
    digits.remove_prefix(1);
  }
  Integer value = 0;
  for (char c : digits) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      return std::nullopt;
    }
    if (d >= base) return std::nullopt;
    value = value * base + d;
  }
  return value;
}

std::optional<Integer> char_literal_value(std::string_view spelling) {
  // spelling includes the quotes
  std::string_view body = spelling.substr(1, spelling.size() - 2);
  if (body.size() == 1) return Integer(static_cast<unsigned char>(body[0]));
  if (body.size() == 2 && body[0] == '\\') {
    switch (body[1]) {
      case 'n': return Integer(10);
      case 't': return Integer(9);
      case 'r': return Integer(13);
      case '0': return Integer(0);
      case '\\': return Integer(92);
      case '\'': return Integer(39);
      case '"': return Integer(34);
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

IntKind literal_kind(const Integer& value, bool unsigned_suffix, bool long_suffix) {
  if (!unsigned_suffix && !long_suffix && value <= IntKind(IntKindId::Int).max_value()) {
    return IntKindId::Int;
  }
  if (unsigned_suffix && !long_suffix && value <= IntKind(IntKindId::UInt).max_value()) {
    return IntKindId::UInt;
  }
  return IntKindId::Int64;
}

IntKind limit_macro_kind(std::string_view name) {
  if (name == "LLONG_MAX") return IntKindId::Int64;
  if (name == "UINT_MAX") return IntKindId::UInt;
  return IntKindId::Int;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file) : toks_(std::move(tokens)), file_(std::move(file)) {}

  std::vector<TopLevelItem> parse_unit() {
    std::vector<TopLevelItem> items;
    while (cur().kind != TokenKind::End) items.push_back(parse_item());
    return items;
  }

 private:
  // --- token helpers -------------------------------------------------------
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool is_punct(std::string_view p) const {
    return cur().kind == TokenKind::Punct && cur().text == p;
  }
  bool is_keyword(std::string_view k) const {
    return cur().kind == TokenKind::Keyword && cur().text == k;
  }
  const Token& take() { return toks_[pos_++]; }
  SourcePos last_end() const { return toks_[pos_ - 1].span.end; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(file_, cur().span.begin.line, cur().span.begin.column, expected);
  }
  [[noreturn]] void unsupported(const Span& span, const std::string& what) const {
    throw UnsupportedConstruct(file_, span, what);
  }

  const Token& expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    return take();
  }
  std::string expect_identifier() {
    if (cur().kind != TokenKind::Identifier) fail("identifier");
    return take().text;
  }

  // --- types ---------------------------------------------------------------
  Type parse_type() {
    Type type;
    std::vector<std::string> words;
    const Span start = cur().span;
    while (is_keyword("const")) words.push_back(take().text);
    if (is_keyword("struct")) {
      words.push_back(take().text);
      type.kind = TypeKind::Struct;
      std::string tag;
      if (cur().kind == TokenKind::Identifier) {
        tag = take().text;
        words.push_back(tag);
      }
      if (is_punct("{")) {
        auto layout = std::make_shared<StructLayout>();
        layout->name = tag;
        parse_fields(*layout);
        if (!tag.empty()) structs_[tag] = layout;
        type.layout = layout;
        type.inline_layout = true;
      } else {
        if (tag.empty()) fail("struct tag or '{'");
        auto it = structs_.find(tag);
        if (it == structs_.end()) {
          throw SemanticError(file_, start.begin.line, start.begin.column,
                              "unknown struct '" + tag + "'");
        }
        type.layout = it->second;
      }
    } else {
      bool seen_unsigned = false, seen_signed = false, seen_void = false;
      int longs = 0, shorts = 0, chars = 0, ints = 0, int64s = 0;
      while (cur().kind == TokenKind::Keyword) {
        const std::string& w = cur().text;
        if (w == "unsigned") {
          seen_unsigned = true;
        } else if (w == "signed") {
          seen_signed = true;
        } else if (w == "long") {
          ++longs;
        } else if (w == "short") {
          ++shorts;
        } else if (w == "char") {
          ++chars;
        } else if (w == "int") {
          ++ints;
        } else if (w == "int64_t") {
          ++int64s;
        } else if (w == "void") {
          seen_void = true;
        } else if (w == "const") {
          // qualifier only
        } else {
          break;
        }
        words.push_back(take().text);
      }
      const Span span{start.begin, last_end()};
      if (words.empty()) fail("type name");
      if (seen_void) {
        if (seen_unsigned || seen_signed || longs || shorts || chars || ints || int64s) {
          fail("valid type specifier combination");
        }
        type.kind = TypeKind::Void;
      } else if (seen_unsigned) {
        if (chars || shorts || longs || int64s) unsupported(span, "unsigned " + words.back() + " type");
        type.int_kind = IntKindId::UInt;
      } else if (int64s) {
        type.int_kind = IntKindId::Int64;
      } else if (longs) {
        type.int_kind = IntKindId::Int64;
      } else if (shorts) {
        type.int_kind = IntKindId::Short;
      } else if (chars) {
        type.int_kind = IntKindId::Char;
      } else if (ints || seen_signed) {
        type.int_kind = IntKindId::Int;
      } else {
        fail("type name");
      }
    }
    while (is_keyword("const")) words.push_back(take().text);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) type.spelling += ' ';
      type.spelling += words[i];
    }
    while (is_punct("*")) {
      take();
      ++type.pointer_depth;
      while (is_keyword("const")) take();
    }
    return type;
  }

  void parse_fields(StructLayout& layout) {
    expect_punct("{");
    while (!is_punct("}")) {
      if (cur().kind == TokenKind::End) fail("'}'");
      StructField field;
      field.type = parse_type();
      if (field.type.kind == TypeKind::Void && !field.type.is_pointer()) fail("field type");
      field.name = expect_identifier();
      if (is_punct("[")) unsupported(cur().span, "array");
      if (is_punct(",")) unsupported(cur().span, "multiple declarators");
      if (layout.find(field.name)) fail("unique field name");
      expect_punct(";");
      layout.fields.push_back(std::move(field));
    }
    expect_punct("}");
  }

  // --- top level -----------------------------------------------------------
  TopLevelItem parse_item() {
    TopLevelItem item;
    const SourcePos begin = cur().span.begin;
    // struct Tag { ... };
    if (is_keyword("struct") && ahead(1).kind == TokenKind::Identifier && ahead(2).text == "{") {
      std::size_t save = pos_;
      Type type = parse_type();
      if (is_punct(";")) {
        take();
        item.kind = ItemKind::Struct;
        item.layout = type.layout;
        item.span = {begin, last_end()};
        return item;
      }
      pos_ = save;
      structs_.erase(ahead(1).text);
    }
    bool is_static = false;
    if (is_keyword("static")) {
      take();
      is_static = true;
    }
    if (!is_type_start(cur())) fail("declaration");
    Type type = parse_type();
    const std::string name = expect_identifier();
    if (is_punct("(")) {
      item.kind = ItemKind::Function;
      FunctionDecl& fn = item.function;
      fn.name = name;
      fn.return_type = std::move(type);
      fn.is_static = is_static;
      parse_params(fn);
      if (is_punct(";")) {
        take();
      } else {
        fn.body = parse_block();
      }
      item.span = fn.span = {begin, last_end()};
      return item;
    }
    item.kind = ItemKind::Global;
    item.global = parse_declarator_rest(std::move(type), name, begin);
    item.span = item.global.span;
    return item;
  }

  void parse_params(FunctionDecl& fn) {
    expect_punct("(");
    if (is_keyword("void") && ahead(1).text == ")") {
      take();
    }
    while (!is_punct(")")) {
      VarDecl param;
      const SourcePos begin = cur().span.begin;
      if (!is_type_start(cur())) fail("parameter type");
      param.type = parse_type();
      if (param.type.kind == TypeKind::Void && !param.type.is_pointer()) fail("parameter type");
      param.name = expect_identifier();
      if (is_punct("[")) unsupported(cur().span, "array");
      param.span = {begin, last_end()};
      fn.params.push_back(std::move(param));
      if (!is_punct(")")) expect_punct(",");
    }
    expect_punct(")");
  }

  VarDecl parse_declarator_rest(Type type, std::string name, SourcePos begin) {
    VarDecl decl;
    decl.type = std::move(type);
    decl.name = std::move(name);
    if (decl.type.kind == TypeKind::Void && !decl.type.is_pointer()) {
      throw SemanticError(file_, begin.line, begin.column, "variable declared void");
    }
    if (is_punct("[")) unsupported(cur().span, "array");
    if (is_punct("=")) {
      take();
      decl.init = parse_expr();
    }
    if (is_punct(",")) unsupported(cur().span, "multiple declarators");
    expect_punct(";");
    decl.span = {begin, last_end()};
    return decl;
  }

  // --- statements ----------------------------------------------------------
  StmtPtr parse_block() {
    auto block = std::make_unique<Stmt>();
    block->kind = StmtKind::Block;
    const SourcePos begin = expect_punct("{").span.begin;
    while (!is_punct("}")) {
      if (cur().kind == TokenKind::End) fail("'}'");
      block->children.push_back(parse_stmt());
    }
    take();
    block->span = {begin, last_end()};
    return block;
  }

  StmtPtr parse_stmt() {
    const SourcePos begin = cur().span.begin;
    if (is_punct("{")) return parse_block();
    if (is_punct(";")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::Empty;
      s->span = {begin, last_end()};
      return s;
    }
    if (is_keyword("if")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::If;
      expect_punct("(");
      s->cond = parse_expr();
      expect_punct(")");
      s->then_branch = parse_stmt();
      if (is_keyword("else")) {
        take();
        s->else_branch = parse_stmt();
      }
      s->span = {begin, last_end()};
      return s;
    }
    if (is_keyword("while")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::While;
      expect_punct("(");
      s->cond = parse_expr();
      expect_punct(")");
      s->body = parse_stmt();
      s->span = {begin, last_end()};
      return s;
    }
    if (is_keyword("for")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::For;
      expect_punct("(");
      if (!is_punct(";")) {
        s->init = is_type_start(cur()) ? parse_decl_stmt() : parse_simple(true);
      } else {
        take();
      }
      if (!is_punct(";")) s->cond = parse_expr();
      expect_punct(";");
      if (!is_punct(")")) s->step = parse_simple(false);
      expect_punct(")");
      s->body = parse_stmt();
      s->span = {begin, last_end()};
      return s;
    }
    if (is_keyword("return")) {
      take();
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::Return;
      if (!is_punct(";")) s->value = parse_expr();
      expect_punct(";");
      s->span = {begin, last_end()};
      return s;
    }
    if (is_keyword("break") || (cur().kind == TokenKind::Identifier &&
                                (cur().text == "continue" || cur().text == "goto" ||
                                 cur().text == "switch" || cur().text == "do"))) {
      unsupported(cur().span, "'" + cur().text + "' statement");
    }
    if (is_keyword("else")) fail("statement");
    if (is_type_start(cur()) || is_keyword("static")) {
      if (is_keyword("static")) unsupported(cur().span, "static local variable");
      return parse_decl_stmt();
    }
    return parse_simple(true);
  }

  StmtPtr parse_decl_stmt() {
    const SourcePos begin = cur().span.begin;
    Type type = parse_type();
    std::string name = expect_identifier();
    auto s = std::make_unique<Stmt>();
    s->kind = StmtKind::Decl;
    s->decl = parse_declarator_rest(std::move(type), std::move(name), begin);
    s->span = s->decl.span;
    return s;
  }

  // Assignment, increment or expression statement. The terminating ';' is
  // consumed when `with_semicolon`.
  StmtPtr parse_simple(bool with_semicolon) {
    const SourcePos begin = cur().span.begin;
    auto s = std::make_unique<Stmt>();
    if (is_punct("++") || is_punct("--")) {
      s->kind = StmtKind::Assign;
      s->assign_op = take().text == "++" ? AssignOp::Increment : AssignOp::Decrement;
      s->prefix = true;
      s->target = parse_unary();
    } else {
      ExprPtr expr = parse_expr();
      static const std::map<std::string, AssignOp, std::less<>> kAssignOps = {
          {"=", AssignOp::Assign},       {"+=", AssignOp::AddAssign}, {"-=", AssignOp::SubAssign},
          {"*=", AssignOp::MulAssign},   {"/=", AssignOp::DivAssign}, {"++", AssignOp::Increment},
          {"--", AssignOp::Decrement}};
      auto it = cur().kind == TokenKind::Punct ? kAssignOps.find(cur().text) : kAssignOps.end();
      if (is_punct("%=")) unsupported(cur().span, "modulo operator");
      if (it != kAssignOps.end()) {
        take();
        s->kind = StmtKind::Assign;
        s->assign_op = it->second;
        s->target = std::move(expr);
        if (it->second != AssignOp::Increment && it->second != AssignOp::Decrement) {
          s->value = parse_expr();
          if (is_punct("=")) unsupported(cur().span, "chained assignment");
        }
      } else {
        s->kind = StmtKind::ExprStmt;
        s->value = std::move(expr);
      }
    }
    if (with_semicolon) expect_punct(";");
    s->span = {begin, last_end()};
    return s;
  }

  // --- expressions ---------------------------------------------------------
  ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Binary;
    e->binary_op = op;
    e->span = {lhs->span.begin, rhs->span.end};
    e->operands.push_back(std::move(lhs));
    e->operands.push_back(std::move(rhs));
    return e;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (is_punct("||")) {
      take();
      lhs = make_binary(BinaryOp::LogicalOr, std::move(lhs), parse_and());
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_equality();
    while (is_punct("&&")) {
      take();
      lhs = make_binary(BinaryOp::LogicalAnd, std::move(lhs), parse_equality());
    }
    return lhs;
  }

  ExprPtr parse_equality() {
    ExprPtr lhs = parse_relational();
    while (is_punct("==") || is_punct("!=")) {
      const BinaryOp op = take().text == "==" ? BinaryOp::Eq : BinaryOp::Ne;
      lhs = make_binary(op, std::move(lhs), parse_relational());
    }
    return lhs;
  }

  ExprPtr parse_relational() {
    ExprPtr lhs = parse_additive();
    while (is_punct("<") || is_punct("<=") || is_punct(">") || is_punct(">=")) {
      const std::string& t = take().text;
      const BinaryOp op = t == "<"    ? BinaryOp::Lt
                          : t == "<=" ? BinaryOp::Le
                          : t == ">"  ? BinaryOp::Gt
                                      : BinaryOp::Ge;
      lhs = make_binary(op, std::move(lhs), parse_additive());
    }
    return lhs;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (is_punct("+") || is_punct("-")) {
      const BinaryOp op = take().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_binary(op, std::move(lhs), parse_multiplicative());
    }
    if (is_punct("<<") || is_punct(">>")) unsupported(cur().span, "shift operator");
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (is_punct("*") || is_punct("/") || is_punct("%")) {
      if (is_punct("%")) unsupported(cur().span, "modulo operator");
      const BinaryOp op = take().text == "*" ? BinaryOp::Mul : BinaryOp::Div;
      lhs = make_binary(op, std::move(lhs), parse_unary());
    }
    if (is_punct("?")) unsupported(cur().span, "conditional operator");
    if (is_punct("&") ) unsupported(cur().span, "bitwise operator");
    return lhs;
  }

  ExprPtr parse_unary() {
    const SourcePos begin = cur().span.begin;
    UnaryOp op;
    if (is_punct("-")) {
      op = UnaryOp::Neg;
    } else if (is_punct("!")) {
      op = UnaryOp::Not;
    } else if (is_punct("*")) {
      op = UnaryOp::Deref;
    } else if (is_punct("&")) {
      op = UnaryOp::AddressOf;
    } else if (is_punct("++") || is_punct("--")) {
      unsupported(cur().span, "increment inside expression");
    } else {
      return parse_postfix();
    }
    take();
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::Unary;
    e->unary_op = op;
    e->operands.push_back(parse_unary());
    e->span = {begin, last_end()};
    return e;
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    while (true) {
      if (is_punct("(")) {
        if (e->kind != ExprKind::VarRef) unsupported(cur().span, "indirect call");
        take();
        e->kind = ExprKind::Call;
        while (!is_punct(")")) {
          e->operands.push_back(parse_expr());
          if (!is_punct(")")) expect_punct(",");
        }
        take();
        e->span.end = last_end();
      } else if (is_punct(".") || is_punct("->")) {
        const bool arrow = take().text == "->";
        auto m = std::make_unique<Expr>();
        m->kind = ExprKind::Member;
        m->arrow = arrow;
        m->text = expect_identifier();
        m->span = {e->span.begin, last_end()};
        m->operands.push_back(std::move(e));
        e = std::move(m);
      } else if (is_punct("[")) {
        unsupported(cur().span, "array subscript");
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_primary() {
    auto e = std::make_unique<Expr>();
    const Token& tok = cur();
    e->span = tok.span;
    switch (tok.kind) {
      case TokenKind::IntLiteral: {
        bool u = false, l = false;
        auto value = parse_literal_value(tok.text, u, l);
        if (!value) fail("integer literal");
        e->kind = ExprKind::IntLiteral;
        e->value = *value;
        e->text = tok.text;
        e->type = literal_kind(*value, u, l);
        take();
        return e;
      }
      case TokenKind::CharLiteral: {
        auto value = char_literal_value(tok.text);
        if (!value) unsupported(tok.span, "character literal escape");
        e->kind = ExprKind::IntLiteral;
        e->value = *value;
        e->text = tok.text;
        e->type = IntKindId::Int;
        take();
        return e;
      }
      case TokenKind::StringLiteral:
        e->kind = ExprKind::StringLiteral;
        e->text = tok.text;
        take();
        return e;
      case TokenKind::LimitMacro:
        e->kind = ExprKind::LimitMacro;
        e->text = tok.text;
        e->type = limit_macro_kind(tok.text);
        e->value = *limit_macro_value(tok.text);
        take();
        return e;
      case TokenKind::Identifier:
        e->kind = ExprKind::VarRef;
        e->text = tok.text;
        take();
        return e;
      case TokenKind::Punct:
        if (tok.text == "(") {
          take();
          if (is_type_start(cur())) unsupported(cur().span, "cast expression");
          ExprPtr inner = parse_expr();
          expect_punct(")");
          return inner;
        }
        break;
      default:
        break;
    }
    fail("expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string file_;
  std::map<std::string, std::shared_ptr<StructLayout>, std::less<>> structs_;
};

// ---------------------------------------------------------------------------
// Name resolution and typing.

class Annotator {
 public:
  explicit Annotator(TranslationUnit& unit) : unit_(unit) {}

  void run() {
    for (auto& item : unit_.items) {
      switch (item.kind) {
        case ItemKind::Struct:
          break;
        case ItemKind::Global:
          if (item.global.init) {
            locals_ = nullptr;
            annotate_expr(*item.global.init);
            require_integer_value(*item.global.init, item.global.type);
          }
          globals_[item.global.name] = item.global.type;
          break;
        case ItemKind::Function: {
          FunctionDecl& fn = item.function;
          functions_[fn.name] = fn.return_type;
          if (!fn.body) break;
          std::map<std::string, Type, std::less<>> locals;
          for (const auto& p : fn.params) locals[p.name] = p.type;
          locals_ = &locals;
          annotate_stmt(*fn.body);
          locals_ = nullptr;
          break;
        }
      }
    }
  }

 private:
  [[noreturn]] void error(const Span& span, const std::string& message) const {
    throw SemanticError(unit_.file_name, span.begin.line, span.begin.column, message);
  }

  void require_integer_value(const Expr& e, const Type& target) const {
    if (target.is_pointer()) return;
    if (target.kind == TypeKind::Struct) error(e.span, "struct assignment is not supported");
    if (e.category != ValueCategory::Integer) error(e.span, "expected an integer expression");
  }

  void annotate_stmt(Stmt& s) {
    switch (s.kind) {
      case StmtKind::Decl:
        if (s.decl.init) {
          annotate_expr(*s.decl.init);
          require_integer_value(*s.decl.init, s.decl.type);
        }
        (*locals_)[s.decl.name] = s.decl.type;
        break;
      case StmtKind::Assign: {
        annotate_expr(*s.target);
        check_lvalue(*s.target);
        if (s.value) {
          annotate_expr(*s.value);
          if (s.target->category == ValueCategory::Integer &&
              s.value->category != ValueCategory::Integer) {
            error(s.value->span, "expected an integer expression");
          }
          if (s.target->category == ValueCategory::Struct) {
            unsupported(s.span, "struct assignment");
          }
        }
        if (s.target->category != ValueCategory::Integer && s.assign_op != AssignOp::Assign) {
          unsupported(s.span, "pointer arithmetic");
        }
        break;
      }
      case StmtKind::ExprStmt:
        annotate_expr(*s.value);
        break;
      case StmtKind::If:
        annotate_cond(*s.cond);
        annotate_stmt(*s.then_branch);
        if (s.else_branch) annotate_stmt(*s.else_branch);
        break;
      case StmtKind::While:
        annotate_cond(*s.cond);
        annotate_stmt(*s.body);
        break;
      case StmtKind::For:
        if (s.init) annotate_stmt(*s.init);
        if (s.cond) annotate_cond(*s.cond);
        if (s.step) annotate_stmt(*s.step);
        annotate_stmt(*s.body);
        break;
      case StmtKind::Block:
        for (auto& c : s.children) annotate_stmt(*c);
        break;
      case StmtKind::Return:
        if (s.value) annotate_expr(*s.value);
        break;
      case StmtKind::Empty:
        break;
    }
  }

  [[noreturn]] void unsupported(const Span& span, const std::string& what) const {
    throw UnsupportedConstruct(unit_.file_name, span, what);
  }

  void annotate_cond(Expr& e) {
    annotate_expr(e);
    if (e.category == ValueCategory::Struct || e.category == ValueCategory::Void) {
      error(e.span, "condition must be scalar");
    }
  }

  void check_lvalue(const Expr& e) const {
    if (e.kind == ExprKind::VarRef && e.scope != VarScope::Builtin) return;
    if (e.kind == ExprKind::Member) return;
    if (e.kind == ExprKind::Unary && e.unary_op == UnaryOp::Deref) return;
    error(e.span, "expression is not assignable");
  }

  void set_from_type(Expr& e, const Type& t) {
    e.declared_type = t;
    if (t.is_pointer()) {
      e.category = ValueCategory::Pointer;
      e.type = IntKindId::Int64;
    } else if (t.kind == TypeKind::Struct) {
      e.category = ValueCategory::Struct;
    } else if (t.kind == TypeKind::Void) {
      e.category = ValueCategory::Void;
    } else {
      e.category = ValueCategory::Integer;
      e.type = t.int_kind;
    }
  }

  void annotate_expr(Expr& e) {
    for (auto& op : e.operands) {
      if (e.kind == ExprKind::Call) continue;
      annotate_expr(*op);
    }
    switch (e.kind) {
      case ExprKind::IntLiteral:
      case ExprKind::LimitMacro:
        e.category = ValueCategory::Integer;
        break;
      case ExprKind::StringLiteral:
        e.category = ValueCategory::Pointer;
        e.type = IntKindId::Char;
        break;
      case ExprKind::VarRef: {
        if (locals_) {
          auto it = locals_->find(e.text);
          if (it != locals_->end()) {
            e.scope = VarScope::Local;
            set_from_type(e, it->second);
            break;
          }
        }
        auto g = globals_.find(e.text);
        if (g != globals_.end()) {
          e.scope = VarScope::Global;
          set_from_type(e, g->second);
          break;
        }
        if (e.text == "stdin" || e.text == "stdout" || e.text == "stderr" || e.text == "NULL") {
          e.scope = VarScope::Builtin;
          e.category = ValueCategory::Pointer;
          e.type = IntKindId::Int64;
          break;
        }
        error(e.span, "use of undeclared identifier '" + e.text + "'");
      }
      case ExprKind::Member: {
        const Expr& base = *e.operands[0];
        if (!base.declared_type || base.declared_type->kind != TypeKind::Struct) {
          error(e.span, "member access on non-struct value");
        }
        const Type& bt = *base.declared_type;
        if (e.arrow ? bt.pointer_depth != 1 : bt.pointer_depth != 0) {
          error(e.span, e.arrow ? "'->' requires a struct pointer" : "'.' requires a struct value");
        }
        const StructField* field = bt.layout->find(e.text);
        if (!field) error(e.span, "no field '" + e.text + "' in struct");
        set_from_type(e, field->type);
        break;
      }
      case ExprKind::Unary: {
        const Expr& operand = *e.operands[0];
        switch (e.unary_op) {
          case UnaryOp::Neg:
            if (operand.category != ValueCategory::Integer) error(e.span, "negation of non-integer");
            e.type = promote(operand.type);
            break;
          case UnaryOp::Not:
            e.type = IntKindId::Int;
            break;
          case UnaryOp::Deref: {
            if (!operand.declared_type || !operand.declared_type->is_pointer()) {
              error(e.span, "dereference of non-pointer");
            }
            Type pointee = *operand.declared_type;
            --pointee.pointer_depth;
            if (pointee.kind == TypeKind::Void && !pointee.is_pointer()) {
              error(e.span, "dereference of void pointer");
            }
            set_from_type(e, pointee);
            break;
          }
          case UnaryOp::AddressOf: {
            if (operand.kind != ExprKind::VarRef && operand.kind != ExprKind::Member) {
              error(e.span, "address of non-lvalue");
            }
            Type t = operand.declared_type.value_or(Type{});
            ++t.pointer_depth;
            set_from_type(e, t);
            break;
          }
        }
        break;
      }
      case ExprKind::Binary: {
        const Expr& l = *e.operands[0];
        const Expr& r = *e.operands[1];
        if (is_arithmetic(e.binary_op)) {
          if (l.category != ValueCategory::Integer || r.category != ValueCategory::Integer) {
            unsupported(e.span, "pointer arithmetic");
          }
          e.type = common_kind(l.type, r.type);
        } else {
          if (l.category == ValueCategory::Struct || r.category == ValueCategory::Struct) {
            error(e.span, "comparison of struct values");
          }
          e.type = IntKindId::Int;
        }
        e.category = ValueCategory::Integer;
        break;
      }
      case ExprKind::Call: {
        for (auto& arg : e.operands) annotate_expr(*arg);
        e.scope = VarScope::Global;
        auto it = functions_.find(e.text);
        if (it != functions_.end()) {
          set_from_type(e, it->second);
        } else {
          // Implicit declaration: library routine returning int.
          e.category = ValueCategory::Integer;
          e.type = IntKindId::Int;
        }
        break;
      }
    }
  }

  TranslationUnit& unit_;
  std::map<std::string, Type, std::less<>> globals_;
  std::map<std::string, Type, std::less<>> functions_;
  std::map<std::string, Type, std::less<>>* locals_ = nullptr;
};

}  // namespace

std::shared_ptr<const TranslationUnit> parse_translation_unit(std::string_view source_text,
                                                              std::string_view file_name) {
  auto unit = std::make_shared<TranslationUnit>();
  unit->file_name = std::string(file_name);
  unit->source = std::string(source_text);
  Parser parser(tokenize(unit->source, file_name), unit->file_name);
  unit->items = parser.parse_unit();
  Annotator(*unit).run();
  return unit;
}

IntKind resolve_field_type(const StructLayout& layout, const std::vector<std::string>& fields) {
  if (fields.empty()) throw UnknownField("<empty path>");
  const StructLayout* current = &layout;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const StructField* field = current->find(fields[i]);
    if (!field) throw UnknownField(fields[i]);
    const bool last = i + 1 == fields.size();
    if (last) {
      if (field->type.is_pointer()) return IntKindId::Int64;
      if (field->type.kind != TypeKind::Int) throw UnknownField(fields[i]);
      return field->type.int_kind;
    }
    if (!field->type.is_struct()) throw UnknownField(fields[i + 1]);
    current = field->type.layout.get();
  }
  throw UnknownField(fields.back());
}

namespace {

const Type* find_local(const Stmt& s, std::string_view name) {
  switch (s.kind) {
    case StmtKind::Decl:
      return s.decl.name == name ? &s.decl.type : nullptr;
    case StmtKind::Block:
      for (const auto& c : s.children) {
        if (const Type* t = find_local(*c, name)) return t;
      }
      return nullptr;
    case StmtKind::If:
      if (const Type* t = find_local(*s.then_branch, name)) return t;
      return s.else_branch ? find_local(*s.else_branch, name) : nullptr;
    case StmtKind::While:
      return find_local(*s.body, name);
    case StmtKind::For:
      if (s.init) {
        if (const Type* t = find_local(*s.init, name)) return t;
      }
      return find_local(*s.body, name);
    default:
      return nullptr;
  }
}

}  // namespace

IntKind resolve_field_type(const TranslationUnit& ast, const std::vector<std::string>& access_path,
                           std::string_view function) {
  if (access_path.empty()) throw UnknownField("<empty path>");
  const Type* var_type = nullptr;
  if (!function.empty()) {
    if (const FunctionDecl* fn = ast.find_definition(function)) {
      for (const auto& p : fn->params) {
        if (p.name == access_path[0]) var_type = &p.type;
      }
      if (!var_type) var_type = find_local(*fn->body, access_path[0]);
    }
  }
  if (!var_type) {
    if (const VarDecl* g = ast.find_global(access_path[0])) var_type = &g->type;
  }
  if (!var_type) throw UnknownField(access_path[0]);
  if (access_path.size() == 1) {
    if (var_type->kind != TypeKind::Int || var_type->is_pointer()) throw UnknownField(access_path[0]);
    return var_type->int_kind;
  }
  if (!var_type->is_struct()) throw UnknownField(access_path[1]);
  return resolve_field_type(*var_type->layout,
                            std::vector<std::string>(access_path.begin() + 1, access_path.end()));
}

}  // namespace guardfix::frontend
