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
#include "guardfix/symexec/summary.hpp"

namespace guardfix::symexec {

using frontend::IntKindId;

SummaryRegistry SummaryRegistry::with_defaults() {
  SummaryRegistry r;
  r.add({"RAND32", {}, IntKindId::Int, SummaryEffect::FreshReturn, 0, std::nullopt});
  r.add({"RAND64", {}, IntKindId::Int64, SummaryEffect::FreshReturn, 0, std::nullopt});
  r.add({"rand", {}, IntKindId::Int, SummaryEffect::FreshReturn, 0, Integer(0)});
  r.add({"atoi", {}, IntKindId::Int, SummaryEffect::FreshReturn, 0, std::nullopt});
  r.add({"getchar", {}, IntKindId::Int, SummaryEffect::FreshReturn, 0, Integer(-1)});
  r.add({"fscanf", {}, IntKindId::Int, SummaryEffect::FreshOutArgs, 0, std::nullopt});
  r.add({"scanf", {}, IntKindId::Int, SummaryEffect::FreshOutArgs, 0, std::nullopt});
  r.add({"sscanf", {}, IntKindId::Int, SummaryEffect::FreshOutArgs, 0, std::nullopt});
  for (const char* name : {"memcpy", "memset", "memmove", "printf", "fprintf", "puts", "putchar",
                           "printLine", "printIntLine", "printUnsignedLine", "printLongLongLine",
                           "printHexCharLine", "free", "fflush", "srand", "fgets", "strcpy",
                           "strncpy", "guardfix_overflow_handler"}) {
    r.add({name, {}, std::nullopt, SummaryEffect::NoEffect, 0, std::nullopt});
  }
  for (const char* name : {"abort", "exit"}) {
    r.add({name, {}, std::nullopt, SummaryEffect::Terminate, 0, std::nullopt});
  }
  return r;
}

void SummaryRegistry::add(FunctionSummary summary) {
  std::string name = summary.name;
  summaries_[name] = std::move(summary);
}

const FunctionSummary* SummaryRegistry::find(const std::string& name) const {
  auto it = summaries_.find(name);
  return it == summaries_.end() ? nullptr : &it->second;
}

std::vector<std::string> SummaryRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, s] : summaries_) out.push_back(name);
  return out;
}

}  // namespace guardfix::symexec
