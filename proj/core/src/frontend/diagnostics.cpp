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
#include "guardfix/frontend/diagnostics.hpp"

namespace guardfix::frontend {

namespace {

std::string render(const std::string& file, std::uint32_t line, std::uint32_t column,
                   const std::string& message) {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

}  // namespace

FrontendError::FrontendError(std::string file, std::uint32_t line, std::uint32_t column,
                             std::string message)
    : Error(render(file, line, column, message)),
      file_(std::move(file)),
      line_(line),
      column_(column),
      message_(std::move(message)) {}

SyntaxError::SyntaxError(std::string file, std::uint32_t line, std::uint32_t column,
                         std::string expected)
    : FrontendError(std::move(file), line, column, "syntax error: expected " + expected),
      expected_(std::move(expected)) {}

UnsupportedConstruct::UnsupportedConstruct(std::string file, const Span& span, std::string construct)
    : FrontendError(std::move(file), span.begin.line, span.begin.column,
                    "unsupported construct: " + construct),
      construct_(std::move(construct)),
      span_(span) {}

UnknownField::UnknownField(std::string element)
    : Error("unknown field: " + element), element_(std::move(element)) {}

}  // namespace guardfix::frontend
