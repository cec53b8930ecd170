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
#include <string>
#include <vector>

#include "reach/model.hpp"

namespace reach {

// A broken model invariant. Violations are data, not exceptions; analyses
// require a violation-free model but inspection tools do not.
struct Violation {
  std::string rule;     // e.g. "CyclicHierarchy", "UseBeforeDef"
  std::string element;  // offending element, e.g. "Hello.main()"
  std::string detail;

  std::string to_string() const {
    return rule + " at " + element + (detail.empty() ? "" : ": " + detail);
  }
};

// Checks every model invariant; empty result means the model is valid.
std::vector<Violation> validate(const ProgramModel& model);

class ModelViolationError : public std::runtime_error {
 public:
  explicit ModelViolationError(std::vector<Violation> violations)
      : std::runtime_error(format(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string format(const std::vector<Violation>& vs) {
    std::string out = "model violates " + std::to_string(vs.size()) +
                      " invariant" + (vs.size() == 1 ? "" : "s");
    for (const Violation& v : vs) out += "\n  " + v.to_string();
    return out;
  }

  std::vector<Violation> violations_;
};

}  // namespace reach
