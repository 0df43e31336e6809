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
#include "guardfix/frontend/printer.hpp"

#include <sstream>

namespace guardfix::frontend {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Binary:
      switch (e.binary_op) {
        case BinaryOp::LogicalOr: return 1;
        case BinaryOp::LogicalAnd: return 2;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 3;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 4;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 6;
      }
      return 0;
    case ExprKind::Unary: return 7;
    case ExprKind::Member:
    case ExprKind::Call: return 8;
    default: return 9;
  }
}

std::string wrap(const Expr& e, bool parens) {
  std::string s = print_expr(e);
  return parens ? "(" + s + ")" : s;
}

std::string indent_str(int indent) { return std::string(static_cast<std::size_t>(indent) * 4, ' '); }

void print_layout_body(std::ostringstream& out, const StructLayout& layout, int indent);

std::string print_type(const Type& type, int indent) {
  std::ostringstream out;
  if (type.inline_layout && type.layout) {
    out << "struct";
    if (!type.layout->name.empty()) out << ' ' << type.layout->name;
    out << ' ';
    print_layout_body(out, *type.layout, indent);
  } else {
    out << type.spelling;
  }
  if (type.pointer_depth > 0) out << ' ' << std::string(static_cast<std::size_t>(type.pointer_depth), '*');
  return out.str();
}

std::string print_declarator(const Type& type, const std::string& name, int indent) {
  std::string t = print_type(type, indent);
  if (type.pointer_depth > 0) return t + name;
  return t + " " + name;
}

void print_layout_body(std::ostringstream& out, const StructLayout& layout, int indent) {
  out << "{\n";
  for (const auto& f : layout.fields) {
    out << indent_str(indent + 1) << print_declarator(f.type, f.name, indent + 1) << ";\n";
  }
  out << indent_str(indent) << "}";
}

std::string print_simple(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Decl: {
      std::string out = print_declarator(s.decl.type, s.decl.name, 0);
      if (s.decl.init) out += " = " + print_expr(*s.decl.init);
      return out;
    }
    case StmtKind::Assign:
      if (s.assign_op == AssignOp::Increment || s.assign_op == AssignOp::Decrement) {
        const std::string op(to_string(s.assign_op));
        return s.prefix ? op + print_expr(*s.target) : print_expr(*s.target) + op;
      }
      return print_expr(*s.target) + " " + std::string(to_string(s.assign_op)) + " " +
             print_expr(*s.value);
    case StmtKind::ExprStmt:
      return print_expr(*s.value);
    default:
      return {};
  }
}

void print_body(std::ostringstream& out, const Stmt& body, int indent) {
  if (body.kind == StmtKind::Block) {
    out << " " << print_stmt(body, indent).substr(static_cast<std::size_t>(indent) * 4);
  } else {
    out << "\n" << print_stmt(body, indent + 1);
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLiteral:
    case ExprKind::LimitMacro:
    case ExprKind::StringLiteral:
    case ExprKind::VarRef:
      return e.text;
    case ExprKind::Member:
      return wrap(*e.operands[0], precedence(*e.operands[0]) < 8) + (e.arrow ? "->" : ".") + e.text;
    case ExprKind::Call: {
      std::string out = e.text + "(";
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(*e.operands[i]);
      }
      return out + ")";
    }
    case ExprKind::Unary: {
      const std::string op(to_string(e.unary_op));
      std::string operand = wrap(*e.operands[0], precedence(*e.operands[0]) < 7);
      if (!operand.empty() && operand[0] == op[0] && (op == "-" || op == "&")) operand = " " + operand;
      return op + operand;
    }
    case ExprKind::Binary: {
      const int p = precedence(e);
      return wrap(*e.operands[0], precedence(*e.operands[0]) < p) + " " +
             std::string(to_string(e.binary_op)) + " " +
             wrap(*e.operands[1], precedence(*e.operands[1]) <= p);
    }
  }
  return {};
}

std::string print_stmt(const Stmt& s, int indent) {
  std::ostringstream out;
  const std::string pad = indent_str(indent);
  switch (s.kind) {
    case StmtKind::Decl:
      out << pad << print_declarator(s.decl.type, s.decl.name, indent);
      if (s.decl.init) out << " = " << print_expr(*s.decl.init);
      out << ";\n";
      break;
    case StmtKind::Assign:
    case StmtKind::ExprStmt:
      out << pad << print_simple(s) << ";\n";
      break;
    case StmtKind::Return:
      out << pad << "return";
      if (s.value) out << " " << print_expr(*s.value);
      out << ";\n";
      break;
    case StmtKind::Empty:
      out << pad << ";\n";
      break;
    case StmtKind::Block:
      out << pad << "{\n";
      for (const auto& c : s.children) out << print_stmt(*c, indent + 1);
      out << pad << "}\n";
      break;
    case StmtKind::If: {
      out << pad << "if (" << print_expr(*s.cond) << ")";
      print_body(out, *s.then_branch, indent);
      if (s.else_branch) {
        out << pad << "else";
        print_body(out, *s.else_branch, indent);
      }
      break;
    }
    case StmtKind::While:
      out << pad << "while (" << print_expr(*s.cond) << ")";
      print_body(out, *s.body, indent);
      break;
    case StmtKind::For:
      out << pad << "for (" << (s.init ? print_simple(*s.init) : "") << "; "
          << (s.cond ? print_expr(*s.cond) : "") << "; " << (s.step ? print_simple(*s.step) : "")
          << ")";
      print_body(out, *s.body, indent);
      break;
  }
  return out.str();
}

std::string pretty_print(const TranslationUnit& unit) {
  std::ostringstream out;
  bool first = true;
  for (const auto& item : unit.items) {
    if (!first) out << "\n";
    first = false;
    switch (item.kind) {
      case ItemKind::Struct:
        out << "struct " << item.layout->name << " ";
        print_layout_body(out, *item.layout, 0);
        out << ";\n";
        break;
      case ItemKind::Global:
        out << print_declarator(item.global.type, item.global.name, 0);
        if (item.global.init) out << " = " << print_expr(*item.global.init);
        out << ";\n";
        break;
      case ItemKind::Function: {
        const FunctionDecl& fn = item.function;
        if (fn.is_static) out << "static ";
        out << print_declarator(fn.return_type, fn.name, 0) << "(";
        if (fn.params.empty()) out << "void";
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
          if (i) out << ", ";
          out << print_declarator(fn.params[i].type, fn.params[i].name, 0);
        }
        out << ")";
        if (fn.body) {
          out << "\n" << print_stmt(*fn.body, 0);
        } else {
          out << ";\n";
        }
        break;
      }
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

class Dumper {
 public:
  explicit Dumper(bool spans) : spans_(spans) {}

  std::string unit(const TranslationUnit& u) {
    out_ << "(unit";
    for (const auto& item : u.items) {
      out_ << "\n ";
      switch (item.kind) {
        case ItemKind::Struct:
          out_ << "(struct-def ";
          layout(*item.layout);
          break;
        case ItemKind::Global:
          out_ << "(global ";
          decl(item.global);
          break;
        case ItemKind::Function:
          out_ << "(function " << item.function.name << (item.function.is_static ? " static " : " ");
          type(item.function.return_type);
          out_ << " (params";
          for (const auto& p : item.function.params) {
            out_ << " ";
            decl(p);
          }
          out_ << ")";
          if (item.function.body) {
            out_ << " ";
            stmt(*item.function.body);
          }
          break;
      }
      span(item.span);
      out_ << ")";
    }
    out_ << ")\n";
    return out_.str();
  }

 private:
  void span(const Span& s) {
    if (!spans_) return;
    out_ << " @" << s.begin.line << ":" << s.begin.column << "-" << s.end.line << ":" << s.end.column;
  }

  void layout(const StructLayout& l) {
    out_ << "(layout " << (l.name.empty() ? "<anon>" : l.name);
    for (const auto& f : l.fields) {
      out_ << " (field " << f.name << " ";
      type(f.type);
      out_ << ")";
    }
    out_ << ")";
  }

  void type(const Type& t) {
    out_ << "(type ";
    switch (t.kind) {
      case TypeKind::Void: out_ << "void"; break;
      case TypeKind::Int: out_ << "'" << t.int_kind.name() << "'"; break;
      case TypeKind::Struct:
        if (t.inline_layout) {
          layout(*t.layout);
        } else {
          out_ << "struct:" << t.layout->name;
        }
        break;
    }
    out_ << " ptr" << t.pointer_depth << " \"" << t.spelling << "\")";
  }

  void decl(const VarDecl& d) {
    out_ << "(decl " << d.name << " ";
    type(d.type);
    if (d.init) {
      out_ << " ";
      expr(*d.init);
    }
    span(d.span);
    out_ << ")";
  }

  void expr(const Expr& e) {
    out_ << "(";
    switch (e.kind) {
      case ExprKind::IntLiteral: out_ << "int " << e.value.str() << " " << e.text; break;
      case ExprKind::LimitMacro: out_ << "macro " << e.text; break;
      case ExprKind::StringLiteral: out_ << "string " << e.text; break;
      case ExprKind::VarRef: out_ << "var " << e.text; break;
      case ExprKind::Member: out_ << (e.arrow ? "arrow " : "member ") << e.text; break;
      case ExprKind::Unary: out_ << "unary " << to_string(e.unary_op); break;
      case ExprKind::Binary: out_ << "binary " << to_string(e.binary_op); break;
      case ExprKind::Call: out_ << "call " << e.text; break;
    }
    out_ << " :'" << e.type.name() << "'";
    for (const auto& op : e.operands) {
      out_ << " ";
      expr(*op);
    }
    span(e.span);
    out_ << ")";
  }

  void opt_stmt(const StmtPtr& s) {
    out_ << " ";
    if (s) {
      stmt(*s);
    } else {
      out_ << "()";
    }
  }

  void stmt(const Stmt& s) {
    out_ << "(";
    switch (s.kind) {
      case StmtKind::Decl: out_ << "decl-stmt "; decl(s.decl); break;
      case StmtKind::Assign:
        out_ << "assign " << to_string(s.assign_op) << (s.prefix ? " prefix " : " ");
        expr(*s.target);
        if (s.value) {
          out_ << " ";
          expr(*s.value);
        }
        break;
      case StmtKind::ExprStmt: out_ << "expr "; expr(*s.value); break;
      case StmtKind::If:
        out_ << "if ";
        expr(*s.cond);
        opt_stmt(s.then_branch);
        opt_stmt(s.else_branch);
        break;
      case StmtKind::While:
        out_ << "while ";
        expr(*s.cond);
        opt_stmt(s.body);
        break;
      case StmtKind::For:
        out_ << "for";
        opt_stmt(s.init);
        out_ << " ";
        if (s.cond) {
          expr(*s.cond);
        } else {
          out_ << "()";
        }
        opt_stmt(s.step);
        opt_stmt(s.body);
        break;
      case StmtKind::Block:
        out_ << "block";
        for (const auto& c : s.children) {
          out_ << " ";
          stmt(*c);
        }
        break;
      case StmtKind::Return:
        out_ << "return";
        if (s.value) {
          out_ << " ";
          expr(*s.value);
        }
        break;
      case StmtKind::Empty: out_ << "empty"; break;
    }
    span(s.span);
    out_ << ")";
  }

  bool spans_;
  std::ostringstream out_;
};

}  // namespace

std::string dump_ast(const TranslationUnit& unit, bool spans) { return Dumper(spans).unit(unit); }

}  // namespace guardfix::frontend
