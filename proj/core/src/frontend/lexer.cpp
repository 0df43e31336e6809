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
#include "guardfix/frontend/lexer.hpp"

#include <array>
#include <cctype>

#include "guardfix/frontend/diagnostics.hpp"

namespace guardfix::frontend {

namespace {

constexpr std::array<std::string_view, 5> kLimitMacros = {"CHAR_MAX", "INT_MAX", "LLONG_MAX",
                                                          "SHRT_MAX", "UINT_MAX"};

constexpr std::array<std::string_view, 17> kKeywords = {
    "char", "short",  "int",   "unsigned", "signed", "long",    "void", "struct", "if",
    "else", "while",  "for",   "return",   "int64_t", "static", "const", "break"};

// Longest first so maximal munch works with a linear scan.
constexpr std::array<std::string_view, 36> kPuncts = {
    "->", "++", "--", "+=", "-=", "*=", "/=", "%=", "<=", ">=", "==", "!=", "&&", "||",
    "<<", ">>", "(",  ")",  "{",  "}",  "[",  "]",  ";",  ",",  ".",  "+",  "-",  "*",
    "/",  "%",  "<",  ">",  "=",  "!",  "&",  "?"};

class Lexer {
 public:
  Lexer(std::string_view source, std::string_view file) : src_(source), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      tokens.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.span.begin = end.span.end = pos();
    tokens.push_back(std::move(end));
    return tokens;
  }

 private:
  bool at_end() const { return offset_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return offset_ + ahead < src_.size() ? src_[offset_ + ahead] : '\0';
  }
  SourcePos pos() const {
    return {static_cast<std::uint32_t>(offset_), line_, column_};
  }

  void advance() {
    if (src_[offset_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++offset_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(std::string(file_), line_, column_, expected);
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) fail("end of comment '*/'");
        advance();
        advance();
      } else if (c == '#' && column_ == 1) {
        directive();
      } else {
        break;
      }
    }
  }

  void directive() {
    const SourcePos start = pos();
    std::size_t end = offset_;
    while (end < src_.size() && src_[end] != '\n') ++end;
    std::string_view line = src_.substr(offset_, end - offset_);
    std::size_t i = 1;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (line.substr(i, 7) != "include") {
      Span span{start, start};
      span.end.offset = static_cast<std::uint32_t>(end);
      span.end.column = start.column + static_cast<std::uint32_t>(line.size());
      throw UnsupportedConstruct(std::string(file_), span, "preprocessor directive");
    }
    while (!at_end() && peek() != '\n') advance();
  }

  Token next() {
    Token tok;
    tok.span.begin = pos();
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        tok.text.push_back(peek());
        advance();
      }
      tok.kind = TokenKind::Identifier;
      for (auto kw : kKeywords) {
        if (tok.text == kw) tok.kind = TokenKind::Keyword;
      }
      if (is_limit_macro(tok.text)) tok.kind = TokenKind::LimitMacro;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isalnum(static_cast<unsigned char>(peek()))) {
        tok.text.push_back(peek());
        advance();
      }
      tok.kind = TokenKind::IntLiteral;
    } else if (c == '\'') {
      tok.text.push_back(c);
      advance();
      while (!at_end() && peek() != '\'') {
        if (peek() == '\n') fail("closing quote of character literal");
        if (peek() == '\\') {
          tok.text.push_back(peek());
          advance();
        }
        tok.text.push_back(peek());
        advance();
      }
      if (at_end()) fail("closing quote of character literal");
      tok.text.push_back(peek());
      advance();
      tok.kind = TokenKind::CharLiteral;
    } else if (c == '"') {
      tok.text.push_back(c);
      advance();
      while (!at_end() && peek() != '"') {
        if (peek() == '\n') fail("closing quote of string literal");
        if (peek() == '\\') {
          tok.text.push_back(peek());
          advance();
        }
        tok.text.push_back(peek());
        advance();
      }
      if (at_end()) fail("closing quote of string literal");
      tok.text.push_back(peek());
      advance();
      tok.kind = TokenKind::StringLiteral;
    } else {
      for (auto p : kPuncts) {
        if (src_.substr(offset_, p.size()) == p) {
          tok.text = std::string(p);
          for (std::size_t i = 0; i < p.size(); ++i) advance();
          tok.kind = TokenKind::Punct;
          break;
        }
      }
      if (tok.kind != TokenKind::Punct) fail(std::string("a token, found '") + c + "'");
    }
    tok.span.end = pos();
    return tok;
  }

  std::string_view src_;
  std::string_view file_;
  std::size_t offset_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t column_ = 1;
};

}  // namespace

bool is_limit_macro(std::string_view name) {
  for (auto m : kLimitMacros) {
    if (m == name) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view source, std::string_view file_name) {
  return Lexer(source, file_name).run();
}

}  // namespace guardfix::frontend
