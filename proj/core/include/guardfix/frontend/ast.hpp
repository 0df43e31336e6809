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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "guardfix/frontend/int_kind.hpp"
#include "guardfix/support/integer.hpp"

namespace guardfix::frontend {

struct SourcePos {
  std::uint32_t offset = 0;
  std::uint32_t line = 1;
  std::uint32_t column = 1;
};

/// Half-open byte range [begin, end) with line/column of both ends.
struct Span {
  SourcePos begin;
  SourcePos end;

  bool contains(const Span& other) const {
    return begin.offset <= other.begin.offset && other.end.offset <= end.offset;
  }
};

struct StructLayout;

enum class TypeKind { Void, Int, Struct };

struct Type {
  TypeKind kind = TypeKind::Int;
  IntKind int_kind = IntKindId::Int;
  std::shared_ptr<const StructLayout> layout;
  int pointer_depth = 0;
  /// Type as written ("unsigned", "long long", "struct Outer"); kept for printing.
  std::string spelling;
  /// Set when the struct body was written inline in this declaration.
  bool inline_layout = false;

  bool is_pointer() const { return pointer_depth > 0; }
  bool is_integer() const { return kind == TypeKind::Int && pointer_depth == 0; }
  bool is_struct() const { return kind == TypeKind::Struct && pointer_depth == 0; }
};

struct StructField {
  std::string name;
  Type type;
};

struct StructLayout {
  std::string name;  // empty for anonymous structs
  std::vector<StructField> fields;

  const StructField* find(std::string_view field) const;
};

enum class ExprKind { IntLiteral, LimitMacro, StringLiteral, VarRef, Member, Unary, Binary, Call };
enum class UnaryOp { Neg, Not, Deref, AddressOf };
enum class BinaryOp { Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, LogicalAnd, LogicalOr };
enum class VarScope { Unresolved, Local, Global, Builtin };
enum class ValueCategory { Integer, Pointer, Struct, Void };

std::string_view to_string(BinaryOp op);
std::string_view to_string(UnaryOp op);
bool is_arithmetic(BinaryOp op);
bool is_comparison(BinaryOp op);
bool is_logical(BinaryOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind = ExprKind::IntLiteral;
  Span span;
  /// Resolved integer kind. Non-integer expressions carry a placeholder and a
  /// non-Integer category.
  IntKind type = IntKindId::Int;
  ValueCategory category = ValueCategory::Integer;

  Integer value;          // IntLiteral
  std::string text;       // identifier, macro, callee, field name, literal spelling
  UnaryOp unary_op = UnaryOp::Neg;
  BinaryOp binary_op = BinaryOp::Add;
  bool arrow = false;     // Member accessed through '->'
  VarScope scope = VarScope::Unresolved;
  /// Declared type of the referenced variable or selected field.
  std::optional<Type> declared_type;
  std::vector<ExprPtr> operands;
};

enum class StmtKind { Decl, Assign, ExprStmt, If, While, For, Block, Return, Empty };
enum class AssignOp { Assign, AddAssign, SubAssign, MulAssign, DivAssign, Increment, Decrement };

std::string_view to_string(AssignOp op);

struct VarDecl {
  std::string name;
  Type type;
  ExprPtr init;
  Span span;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  Span span;

  VarDecl decl;                    // Decl
  ExprPtr target;                  // Assign
  AssignOp assign_op = AssignOp::Assign;
  bool prefix = false;             // ++x versus x++
  ExprPtr value;                   // Assign rhs, ExprStmt, Return
  ExprPtr cond;                    // If, While, For (may be null in For)
  StmtPtr then_branch;             // If
  StmtPtr else_branch;             // If (optional)
  StmtPtr body;                    // While, For
  StmtPtr init;                    // For (optional)
  StmtPtr step;                    // For (optional)
  std::vector<StmtPtr> children;   // Block
};

struct FunctionDecl {
  std::string name;
  Type return_type;
  std::vector<VarDecl> params;
  StmtPtr body;  // null for prototypes
  bool is_static = false;
  Span span;

  bool is_definition() const { return body != nullptr; }
};

enum class ItemKind { Function, Global, Struct };

struct TopLevelItem {
  ItemKind kind = ItemKind::Function;
  Span span;
  FunctionDecl function;
  VarDecl global;
  std::shared_ptr<const StructLayout> layout;
};

/// Parsed and type-annotated translation unit. Immutable once produced by
/// parse_translation_unit; share it through std::shared_ptr<const ...>.
struct TranslationUnit {
  std::string file_name;
  std::string source;
  std::vector<TopLevelItem> items;

  const FunctionDecl* find_function(std::string_view name) const;
  const FunctionDecl* find_definition(std::string_view name) const;
  const VarDecl* find_global(std::string_view name) const;
  std::shared_ptr<const StructLayout> find_struct(std::string_view name) const;
  std::vector<const FunctionDecl*> definitions() const;

  /// Source text covered by a span.
  std::string_view text(const Span& span) const;
};

using TypedAst = TranslationUnit;

}  // namespace guardfix::frontend
