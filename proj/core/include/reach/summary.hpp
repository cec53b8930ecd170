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

#include <stdexcept>

#include "reach/model.hpp"

namespace reach {

class NoBodyError : public std::runtime_error {
 public:
  explicit NoBodyError(const std::string& method)
      : std::runtime_error("abstract method has no body: " + method) {}
};

// Projects a method body into its effect sets: allocations into
// instantiated types, loads/stores into read/written fields, invokes into
// their three sets, constants into embedded constants. Deterministic and
// insensitive to instruction order. Throws NoBodyError for abstract
// methods.
MethodSummary extract_summary(const ProgramModel& model, const MethodDecl& method);

}  // namespace reach
