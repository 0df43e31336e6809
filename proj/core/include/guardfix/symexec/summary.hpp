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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "guardfix/cfg/paths.hpp"
#include "guardfix/frontend/int_kind.hpp"
#include "guardfix/support/integer.hpp"

namespace guardfix::symexec {

enum class SummaryEffect {
  /// Returns a fresh value within the return kind's domain.
  FreshReturn,
  /// Returns a fixed constant.
  ConstantReturn,
  /// Assigns fresh values to every `&lvalue` argument and returns a fresh value.
  FreshOutArgs,
  /// No effect on the integer store.
  NoEffect,
  /// Ends the path (exit, abort).
  Terminate,
};

struct FunctionSummary {
  std::string name;
  std::vector<frontend::IntKind> params;
  std::optional<frontend::IntKind> return_kind;
  SummaryEffect effect = SummaryEffect::NoEffect;
  Integer constant;  // ConstantReturn
  /// Optional tighter return range for FreshReturn (e.g. rand() >= 0).
  std::optional<Integer> return_min;
};

class MissingSummary : public cfg::PathAbandoned {
 public:
  explicit MissingSummary(const std::string& name)
      : cfg::PathAbandoned("no summary for library function '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SummaryRegistry {
 public:
  /// Registry preloaded with the standard library stubs.
  static SummaryRegistry with_defaults();

  void add(FunctionSummary summary);
  const FunctionSummary* find(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, FunctionSummary> summaries_;
};

}  // namespace guardfix::symexec
