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
#include "guardfix/repair/repair.hpp"

#include "guardfix/frontend/parser.hpp"
#include "guardfix/overflow/checker.hpp"
#include "guardfix/smt/smtlib.hpp"

namespace guardfix::repair {

using frontend::Stmt;
using frontend::StmtKind;

symexec::AnalysisResult analyze_unit(std::shared_ptr<const frontend::TranslationUnit> unit,
                                     const AnalysisConfig& config) {
  symexec::Engine engine(config.engine);
  auto checker = std::make_shared<overflow::OverflowChecker>(config.limits_path);
  if (config.fixed_bound) checker->fix_bound(*config.fixed_bound);
  engine.register_checker(checker);
  return engine.analyze(std::move(unit));
}

std::string to_string(ValidationStatus status) {
  switch (status) {
    case ValidationStatus::Unvalidated: return "unvalidated";
    case ValidationStatus::ConstraintValidated: return "constraint-validated";
    case ValidationStatus::Revalidated: return "revalidated";
    case ValidationStatus::Failed: return "failed";
  }
  return "failed";
}

ValidationStatus validation_status_from_string(const std::string& text) {
  for (auto s : {ValidationStatus::Unvalidated, ValidationStatus::ConstraintValidated,
                 ValidationStatus::Revalidated, ValidationStatus::Failed}) {
    if (to_string(s) == text) return s;
  }
  throw Error("unknown validation status '" + text + "'");
}

nlohmann::json to_json(const RepairCandidate& c) {
  return {{"problem_id", c.problem_id},
          {"file", c.file},
          {"pattern_id", c.pattern_id},
          {"template", c.template_key},
          {"bindings", c.bindings},
          {"begin_offset", c.begin_offset},
          {"end_offset", c.end_offset},
          {"line", c.line},
          {"statement", c.statement},
          {"replacement", c.replacement},
          {"injection", c.injection},
          {"injection_offset", c.injection_offset},
          {"status", to_string(c.status)},
          {"failure_reason", c.failure_reason},
          {"diff", c.diff},
          {"repair_type", c.repair_type}};
}

RepairCandidate candidate_from_json(const nlohmann::json& j) {
  RepairCandidate c;
  c.problem_id = j.at("problem_id").get<std::string>();
  c.file = j.at("file").get<std::string>();
  c.pattern_id = j.at("pattern_id").get<std::string>();
  c.template_key = j.at("template").get<std::string>();
  c.bindings = j.at("bindings").get<std::map<std::string, std::string>>();
  c.begin_offset = j.at("begin_offset").get<std::uint32_t>();
  c.end_offset = j.at("end_offset").get<std::uint32_t>();
  c.line = j.at("line").get<std::uint32_t>();
  c.statement = j.at("statement").get<std::string>();
  c.replacement = j.at("replacement").get<std::string>();
  c.injection = j.at("injection").get<std::string>();
  c.injection_offset = j.at("injection_offset").get<std::uint32_t>();
  c.status = validation_status_from_string(j.at("status").get<std::string>());
  c.failure_reason = j.at("failure_reason").get<std::string>();
  c.diff = j.at("diff").get<std::string>();
  c.repair_type = j.value("repair_type", "in-place");
  return c;
}

std::string handler_definition(HandlerVariant variant) {
  if (variant == HandlerVariant::V1) return "#include <stdio.h>\n";
  return std::string("#include <stdlib.h>\nstatic void ") + kHandlerName +
         "(const char *file, const char *id, int line) { abort(); }\n";
}

namespace {

enum class Placement { InBlock, SingleBody, Unwrappable };

Placement placement_in(const Stmt* s, const Stmt* target, bool in_block) {
  if (!s) return Placement::Unwrappable;
  if (s == target) return in_block ? Placement::InBlock : Placement::SingleBody;
  if (s->init.get() == target || s->step.get() == target) return Placement::Unwrappable;
  for (const Stmt* child : {s->then_branch.get(), s->else_branch.get(), s->body.get()}) {
    if (!child) continue;
    if (child == target) return Placement::SingleBody;
    if (child->span.contains(target->span)) return placement_in(child, target, false);
  }
  for (const auto& c : s->children) {
    if (c.get() == target) return Placement::InBlock;
    if (c->span.contains(target->span)) return placement_in(c.get(), target, true);
  }
  return Placement::Unwrappable;
}

Placement placement(const frontend::TranslationUnit& unit, const Stmt* target) {
  for (const auto& item : unit.items) {
    if (item.kind != frontend::ItemKind::Function || !item.function.body) continue;
    if (item.function.body->span.contains(target->span)) return placement_in(item.function.body.get(), target, false);
  }
  return Placement::Unwrappable;
}

std::string indent_of(const std::string& source, std::size_t offset) {
  std::size_t line_start = source.rfind('\n', offset == 0 ? 0 : offset - 1);
  line_start = line_start == std::string::npos ? 0 : line_start + 1;
  std::string prefix = source.substr(line_start, offset - line_start);
  std::string indent;
  for (char c : prefix) {
    if (c != ' ' && c != '\t') break;
    indent += c;
  }
  return indent;
}

std::string reindent(const std::string& code, const std::string& indent) {
  std::string out;
  for (char c : code) {
    out += c;
    if (c == '\n') out += indent;
  }
  return out;
}

bool declares_handler(const frontend::TranslationUnit& unit) {
  return unit.find_function(kHandlerName) != nullptr;
}

bool includes_header(const std::string& source, const std::string& header) {
  return source.find("#include <" + header + ">") != std::string::npos;
}

}  // namespace

RepairCandidate generate_candidate(const symexec::BugReport& report, const frontend::TranslationUnit& unit,
                                   const PatternPool& pool, smt::SmtSolver& solver,
                                   const RepairOptions& options) {
  RepairCandidate c;
  c.problem_id = report.problem_id;
  c.file = report.file;
  c.begin_offset = report.begin_offset;
  c.end_offset = report.end_offset;
  c.line = report.line;
  c.statement = report.statement;
  c.status = ValidationStatus::Failed;
  try {
    BugCluster cluster = cluster_bug(report, unit);
    GuardGroup guard = reconstrain(cluster, select_constraint_vars(cluster));
    auto check = build_and_check_new_system(cluster, guard, solver);
    if (check.outcome != ConstraintCheck::Validated) {
      c.failure_reason = check.reason;
      return c;
    }
    determine_bug_type(report.problem_id, options.known_checkers);

    SiteShape shape = site_shape(*cluster.stmt, unit);
    const RepairPattern& pattern = select_pattern(shape, pool);
    HandlerVariant variant = options.handler.value_or(pattern.handler);
    Instantiation inst =
        instantiate_pattern(pattern, shape, report.bound, {report.file, report.problem_id, report.line}, pool, variant);
    c.pattern_id = pattern.id;
    c.template_key = inst.template_key;
    c.bindings = inst.bindings;

    Placement where = placement(unit, cluster.stmt);
    if (where == Placement::Unwrappable) throw NoApplicablePattern("statement cannot be wrapped in a guard");
    std::string indent = indent_of(unit.source, report.begin_offset);
    std::string block = shape.declaration ? *shape.declaration + "\n" + inst.code : inst.code;
    if (where == Placement::SingleBody) {
      c.replacement = "{\n" + indent + "    " + reindent(block, indent + "    ") + "\n" + indent + "}";
    } else {
      c.replacement = reindent(block, indent);
    }

    bool needed = variant == HandlerVariant::V2 ? !declares_handler(unit) : !includes_header(unit.source, "stdio.h");
    if (needed) {
      c.injection = handler_definition(variant);
      std::uint32_t first = static_cast<std::uint32_t>(unit.source.size());
      for (const auto& item : unit.items) first = std::min(first, item.span.begin.offset);
      std::size_t line_start = unit.source.rfind('\n', first == 0 ? 0 : first - 1);
      c.injection_offset = first == 0 || line_start == std::string::npos ? 0 : static_cast<std::uint32_t>(line_start + 1);
    }
    c.status = ValidationStatus::ConstraintValidated;
    c.diff = insert_repair(unit.source, c).diff;
  } catch (const StaleState& e) {
    c.failure_reason = e.what();
  } catch (const UnknownChecker& e) {
    c.failure_reason = e.what();
  } catch (const NoApplicablePattern& e) {
    c.failure_reason = e.what();
  } catch (const UnboundPlaceholder& e) {
    c.failure_reason = e.what();
  }
  if (c.status == ValidationStatus::Failed) c.diff.clear();
  return c;
}

PatchResult insert_repairs(std::string_view text, const std::vector<const RepairCandidate*>& candidates) {
  std::vector<TextEdit> edits;
  const RepairCandidate* injector = nullptr;
  for (const auto* c : candidates) {
    if (c->end_offset > text.size() ||
        text.substr(c->begin_offset, c->end_offset - c->begin_offset) != c->statement) {
      throw SpanDrift("statement of " + c->problem_id + " changed since detection");
    }
    edits.push_back({c->begin_offset, c->end_offset, c->replacement});
    if (!c->injection.empty() && !injector) injector = c;
  }
  if (injector) {
    if (text.find(injector->injection) == std::string_view::npos) {
      if (injector->injection_offset > text.size()) throw SpanDrift("handler insertion point moved");
      edits.push_back({injector->injection_offset, injector->injection_offset, injector->injection});
    }
  }
  PatchResult result;
  result.text = apply_edits(text, edits);
  std::string name = candidates.empty() ? std::string("file") : candidates.front()->file;
  result.diff = unified_diff(text, result.text, "a/" + name, "b/" + name);

  // Line of each wrapped statement after patching.
  for (const auto* c : candidates) {
    long shift = 0;
    for (const auto& e : edits) {
      if (e.begin < c->begin_offset || (e.begin == c->begin_offset && e.end == e.begin)) {
        shift += static_cast<long>(e.replacement.size()) - static_cast<long>(e.end - e.begin);
      }
    }
    std::size_t start = static_cast<std::size_t>(static_cast<long>(c->begin_offset) + shift);
    auto stm = c->bindings.find("buggyStm10");
    std::size_t within = stm == c->bindings.end() ? 0 : c->replacement.find("{\n");
    std::size_t at = stm == c->bindings.end() ? std::string::npos : c->replacement.find(stm->second, within);
    std::size_t pos = start + (at == std::string::npos ? 0 : at);
    result.statement_lines.push_back(
        static_cast<std::uint32_t>(std::count(result.text.begin(), result.text.begin() + pos, '\n') + 1));
  }
  return result;
}

PatchResult insert_repair(std::string_view text, const RepairCandidate& candidate) {
  return insert_repairs(text, {&candidate});
}

RevalidationResult revalidate(const std::string& patched_text, const std::string& file_name,
                              const PatchResult& patch, const std::vector<symexec::BugReport>& before,
                              const AnalysisConfig& config) {
  RevalidationResult r;
  auto unit = frontend::parse_translation_unit(patched_text, file_name);
  r.analysis = analyze_unit(unit, config);
  std::set<std::pair<std::string, std::string>> known;
  for (const auto& b : before) known.insert({b.function, b.statement});
  std::set<std::uint32_t> repaired(patch.statement_lines.begin(), patch.statement_lines.end());
  for (const auto& rep : r.analysis.reports) {
    if (repaired.count(rep.line)) r.remaining.push_back(rep);
    else if (!known.count({rep.function, rep.statement})) r.introduced.push_back(rep);
  }
  r.revalidated = r.remaining.empty();
  return r;
}

}  // namespace guardfix::repair
