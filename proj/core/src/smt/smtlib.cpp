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
#include "guardfix/smt/smtlib.hpp"

#include <cctype>

namespace guardfix::smt {

namespace {

constexpr const char* kCdivDefinition =
    "(define-fun cdiv ((a Int) (b Int)) Int (ite (>= a 0) (ite (> b 0) (div a b) "
    "(- (div a (- b)))) (ite (> b 0) (- (div (- a) b)) (div (- a) (- b)))))";

bool is_simple_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '~': case '!': case '@': case '$': case '%': case '^': case '&':
    case '*': case '_': case '-': case '+': case '=': case '<': case '>':
    case '.': case '?': case '/':
      return true;
    default:
      return false;
  }
}

const char* rel_name(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "distinct";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
  }
  return "=";
}

void emit_term_to(const Term& t, std::string& out) {
  switch (t->op) {
    case TermOp::Var:
      out += quote_symbol(t->symbol);
      return;
    case TermOp::Const:
      if (t->value < 0) {
        out += "(- ";
        out += to_string(Integer(-t->value));
        out += ')';
      } else {
        out += to_string(t->value);
      }
      return;
    case TermOp::Neg:
      out += "(- ";
      emit_term_to(t->args[0], out);
      out += ')';
      return;
    default:
      break;
  }
  const char* name = "+";
  if (t->op == TermOp::Sub) name = "-";
  if (t->op == TermOp::Mul) name = "*";
  if (t->op == TermOp::Div) name = "cdiv";
  out += '(';
  out += name;
  for (const auto& a : t->args) {
    out += ' ';
    emit_term_to(a, out);
  }
  out += ')';
}

void emit_formula_to(const Formula& f, std::string& out) {
  switch (f->op) {
    case FormulaOp::True: out += "true"; return;
    case FormulaOp::False: out += "false"; return;
    case FormulaOp::Rel:
      out += '(';
      out += rel_name(f->rel);
      out += ' ';
      emit_term_to(f->lhs, out);
      out += ' ';
      emit_term_to(f->rhs, out);
      out += ')';
      return;
    case FormulaOp::Not: out += "(not"; break;
    case FormulaOp::And: out += "(and"; break;
    case FormulaOp::Or: out += "(or"; break;
  }
  for (const auto& a : f->args) {
    out += ' ';
    emit_formula_to(a, out);
  }
  out += ')';
}

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else if (c == ';') {
      while (pos < text.size() && text[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

std::string unquote(const std::string& atom) {
  if (atom.size() >= 2 && atom.front() == '|' && atom.back() == '|') {
    return atom.substr(1, atom.size() - 2);
  }
  return atom;
}

bool is_numeral(const std::string& atom) {
  if (atom.empty()) return false;
  for (char c : atom) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Term parse_term(const SExpr& e) {
  if (e.is_atom) {
    if (is_numeral(e.atom)) return constant(*parse_integer(e.atom));
    if (e.atom.empty()) throw SmtParseError("empty term");
    return var(unquote(e.atom));
  }
  if (e.items.empty() || !e.items[0].is_atom) throw SmtParseError("malformed term");
  const std::string& head = e.items[0].atom;
  std::vector<Term> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(parse_term(e.items[i]));
  if (args.empty()) throw SmtParseError("operator without operands: " + head);
  if (head == "-" && args.size() == 1) {
    if (e.items[1].is_atom && is_numeral(e.items[1].atom) && args[0]->value != 0) {
      return constant(Integer(-args[0]->value));
    }
    return neg(args[0]);
  }
  auto fold = [&](Term (*op)(Term, Term)) {
    Term acc = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) acc = op(acc, args[i]);
    return acc;
  };
  if (head == "+") return fold(&add);
  if (head == "-") return fold(&sub);
  if (head == "*") return fold(&mul);
  if (head == "cdiv" || head == "div") {
    if (args.size() != 2) throw SmtParseError("division takes two operands");
    return div(args[0], args[1]);
  }
  throw SmtParseError("unsupported term operator: " + head);
}

Formula parse_formula(const SExpr& e) {
  if (e.is_atom) {
    if (e.atom == "true") return truth();
    if (e.atom == "false") return falsity();
    throw SmtParseError("unsupported formula atom: " + e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom) throw SmtParseError("malformed formula");
  const std::string& head = e.items[0].atom;
  if (head == "and" || head == "or" || head == "not") {
    std::vector<Formula> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(parse_formula(e.items[i]));
    if (head == "not") {
      if (parts.size() != 1) throw SmtParseError("not takes one operand");
      return negation(parts[0]);
    }
    if (parts.size() < 2) throw SmtParseError(head + " takes at least two operands");
    auto node = std::make_shared<FormulaNode>();
    node->op = head == "and" ? FormulaOp::And : FormulaOp::Or;
    node->args = std::move(parts);
    return node;
  }
  static const std::pair<const char*, RelOp> rels[] = {
      {"=", RelOp::Eq}, {"distinct", RelOp::Ne}, {"<", RelOp::Lt},
      {"<=", RelOp::Le}, {">", RelOp::Gt}, {">=", RelOp::Ge}};
  for (const auto& [name, op] : rels) {
    if (head == name) {
      if (e.items.size() != 3) throw SmtParseError("relation takes two operands: " + head);
      return relation(op, parse_term(e.items[1]), parse_term(e.items[2]));
    }
  }
  throw SmtParseError("unsupported formula operator: " + head);
}

}  // namespace

std::string quote_symbol(const std::string& symbol) {
  bool simple = !symbol.empty() && !std::isdigit(static_cast<unsigned char>(symbol[0]));
  for (char c : symbol) {
    if (!is_simple_symbol_char(c)) simple = false;
  }
  if (simple) return symbol;
  return "|" + symbol + "|";
}

std::string emit_term(const Term& term) {
  std::string out;
  emit_term_to(term, out);
  return out;
}

std::string emit_formula(const Formula& formula) {
  std::string out;
  emit_formula_to(formula, out);
  return out;
}

std::string emit_smtlib(const ConstraintSystem& system, bool with_get_model) {
  std::string out = "(set-logic QF_NIA)\n";
  if (system.uses_division()) {
    out += kCdivDefinition;
    out += '\n';
  }
  for (const auto& d : system.declarations()) {
    out += "(declare-const " + quote_symbol(d) + " Int)\n";
  }
  for (const auto& a : system.assertions()) {
    out += "; group: " + a.tag.str() + "\n(assert ";
    emit_formula_to(a.formula, out);
    out += ")\n";
  }
  out += "(check-sat)\n";
  if (with_get_model && !system.declarations().empty()) out += "(get-model)\n";
  return out;
}

SExpr read_sexpr(std::string_view text, std::size_t& pos) {
  skip_space(text, pos);
  if (pos >= text.size()) throw SmtParseError("unexpected end of input");
  char c = text[pos];
  if (c == ')') throw SmtParseError("unexpected ')'");
  if (c == '(') {
    ++pos;
    SExpr list;
    list.is_atom = false;
    while (true) {
      skip_space(text, pos);
      if (pos >= text.size()) throw SmtParseError("unbalanced parentheses");
      if (text[pos] == ')') {
        ++pos;
        return list;
      }
      list.items.push_back(read_sexpr(text, pos));
    }
  }
  SExpr atom;
  std::size_t start = pos;
  if (c == '|') {
    ++pos;
    while (pos < text.size() && text[pos] != '|') ++pos;
    if (pos >= text.size()) throw SmtParseError("unterminated quoted symbol");
    ++pos;
  } else if (c == '"') {
    ++pos;
    while (pos < text.size()) {
      if (text[pos] == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          pos += 2;
          continue;
        }
        break;
      }
      ++pos;
    }
    if (pos >= text.size()) throw SmtParseError("unterminated string literal");
    ++pos;
  } else {
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')' && text[pos] != ';') {
      ++pos;
    }
  }
  atom.atom = std::string(text.substr(start, pos - start));
  return atom;
}

std::vector<SExpr> read_all_sexprs(std::string_view text) {
  std::vector<SExpr> out;
  std::size_t pos = 0;
  while (true) {
    skip_space(text, pos);
    if (pos >= text.size()) break;
    out.push_back(read_sexpr(text, pos));
  }
  return out;
}

ConstraintSystem parse_smtlib(std::string_view script) {
  ConstraintSystem system;
  GroupTag current = definition_group();
  std::size_t pos = 0;
  constexpr std::string_view kGroupPrefix = "; group: ";
  while (pos < script.size()) {
    char c = script[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c == ';') {
      std::size_t end = script.find('\n', pos);
      if (end == std::string_view::npos) end = script.size();
      std::string_view line = script.substr(pos, end - pos);
      if (line.substr(0, kGroupPrefix.size()) == kGroupPrefix) {
        auto tag = GroupTag::parse(line.substr(kGroupPrefix.size()));
        if (!tag) throw SmtParseError("unknown group tag: " + std::string(line));
        current = *tag;
      }
      pos = end;
      continue;
    }
    SExpr cmd = read_sexpr(script, pos);
    if (cmd.is_atom || cmd.items.empty() || !cmd.items[0].is_atom) {
      throw SmtParseError("malformed command");
    }
    const std::string& head = cmd.items[0].atom;
    if (head == "declare-const" || head == "declare-fun") {
      if (cmd.items.size() < 3 || !cmd.items[1].is_atom) {
        throw SmtParseError("malformed declaration");
      }
      system.declare(unquote(cmd.items[1].atom));
    } else if (head == "assert") {
      if (cmd.items.size() != 2) throw SmtParseError("assert takes one formula");
      system.add(current, parse_formula(cmd.items[1]));
    } else if (head == "set-logic" || head == "set-option" || head == "define-fun" ||
               head == "check-sat" || head == "get-model" || head == "get-value" ||
               head == "exit" || head == "reset" || head == "set-info") {
      continue;
    } else {
      throw SmtParseError("unsupported command: " + head);
    }
  }
  return system;
}

}  // namespace guardfix::smt
