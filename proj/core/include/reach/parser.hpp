// Copyright 2026 The Reach Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reach/model.hpp"

namespace reach {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses the textual model format (see docs/model-format.md), resolves all
// names, and validates; throws ParseError on syntax/reference errors and
// ModelViolationError when a model-level invariant fails.
ProgramModel parse_model(const std::string& text);

// Same front end without the validation step. Lets callers inspect invalid
// models through validate().
ProgramModel parse_model_unvalidated(const std::string& text);

// Canonical textual form. parse_model(serialize_model(m)) == m for every
// valid model.
std::string serialize_model(const ProgramModel& model);

// Canonical text of one method body (one instruction per line); the
// summary store hashes exactly this.
std::string serialize_body(const ProgramModel& model, const MethodDecl& method);

// Token helpers shared with the summary store.
struct MethodTokenParts {
  std::string owner;
  std::string name;
  std::vector<std::string> params;
};
struct FieldTokenParts {
  std::string owner;
  std::string name;
};
std::optional<MethodTokenParts> split_method_token(std::string_view token);
std::optional<FieldTokenParts> split_field_token(std::string_view token);

}  // namespace reach
