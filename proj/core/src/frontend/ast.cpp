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
#include "guardfix/frontend/ast.hpp"

namespace guardfix::frontend {

const StructField* StructLayout::find(std::string_view field) const {
  for (const auto& f : fields) {
    if (f.name == field) return &f;
  }
  return nullptr;
}

std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::LogicalAnd: return "&&";
    case BinaryOp::LogicalOr: return "||";
  }
  return "?";
}

std::string_view to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Not: return "!";
    case UnaryOp::Deref: return "*";
    case UnaryOp::AddressOf: return "&";
  }
  return "?";
}

std::string_view to_string(AssignOp op) {
  switch (op) {
    case AssignOp::Assign: return "=";
    case AssignOp::AddAssign: return "+=";
    case AssignOp::SubAssign: return "-=";
    case AssignOp::MulAssign: return "*=";
    case AssignOp::DivAssign: return "/=";
    case AssignOp::Increment: return "++";
    case AssignOp::Decrement: return "--";
  }
  return "?";
}

bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul || op == BinaryOp::Div;
}

bool is_comparison(BinaryOp op) {
  return op == BinaryOp::Lt || op == BinaryOp::Le || op == BinaryOp::Gt || op == BinaryOp::Ge ||
         op == BinaryOp::Eq || op == BinaryOp::Ne;
}

bool is_logical(BinaryOp op) { return op == BinaryOp::LogicalAnd || op == BinaryOp::LogicalOr; }

const FunctionDecl* TranslationUnit::find_function(std::string_view name) const {
  const FunctionDecl* prototype = nullptr;
  for (const auto& item : items) {
    if (item.kind != ItemKind::Function || item.function.name != name) continue;
    if (item.function.is_definition()) return &item.function;
    if (!prototype) prototype = &item.function;
  }
  return prototype;
}

const FunctionDecl* TranslationUnit::find_definition(std::string_view name) const {
  for (const auto& item : items) {
    if (item.kind == ItemKind::Function && item.function.name == name &&
        item.function.is_definition()) {
      return &item.function;
    }
  }
  return nullptr;
}

const VarDecl* TranslationUnit::find_global(std::string_view name) const {
  for (const auto& item : items) {
    if (item.kind == ItemKind::Global && item.global.name == name) return &item.global;
  }
  return nullptr;
}

std::shared_ptr<const StructLayout> TranslationUnit::find_struct(std::string_view name) const {
  for (const auto& item : items) {
    if (item.kind == ItemKind::Struct && item.layout->name == name) return item.layout;
  }
  return nullptr;
}

std::vector<const FunctionDecl*> TranslationUnit::definitions() const {
  std::vector<const FunctionDecl*> out;
  for (const auto& item : items) {
    if (item.kind == ItemKind::Function && item.function.is_definition()) {
      out.push_back(&item.function);
    }
  }
  return out;
}

std::string_view TranslationUnit::text(const Span& span) const {
  return std::string_view(source).substr(span.begin.offset, span.end.offset - span.begin.offset);
}

}  // namespace guardfix::frontend
