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

#include <string>

#include "guardfix/frontend/ast.hpp"
#include "guardfix/support/error.hpp"

namespace guardfix::frontend {

/// Base for diagnostics that carry a source location. what() renders
/// `file:line:col: message`.
class FrontendError : public Error {
 public:
  FrontendError(std::string file, std::uint32_t line, std::uint32_t column, std::string message);

  const std::string& file() const { return file_; }
  std::uint32_t line() const { return line_; }
  std::uint32_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_;
  std::uint32_t line_;
  std::uint32_t column_;
  std::string message_;
};

class SyntaxError : public FrontendError {
 public:
  SyntaxError(std::string file, std::uint32_t line, std::uint32_t column, std::string expected);
  const std::string& expected() const { return expected_; }

 private:
  std::string expected_;
};

class UnsupportedConstruct : public FrontendError {
 public:
  UnsupportedConstruct(std::string file, const Span& span, std::string construct);
  const std::string& construct() const { return construct_; }
  const Span& span() const { return span_; }

 private:
  std::string construct_;
  Span span_;
};

/// Name resolution or typing failure (undeclared identifier, bad lvalue).
class SemanticError : public FrontendError {
 public:
  using FrontendError::FrontendError;
};

class UnknownField : public Error {
 public:
  explicit UnknownField(std::string element);
  const std::string& element() const { return element_; }

 private:
  std::string element_;
};

}  // namespace guardfix::frontend
