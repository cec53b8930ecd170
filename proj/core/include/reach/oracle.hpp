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

#include "reach/analysis.hpp"

namespace reach {

class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what)
      : std::runtime_error("oracle budget exceeded: " + what) {}
};

struct OracleBudget {
  size_t max_elements = 50000;  // types + methods + fields
  size_t max_rounds = 100000;
};

// Reference fixpoint: no worklist, no incremental marking. Every rule
// (direct invokes, virtual dispatch over instantiated subtypes, gated
// special invokes, instantiation, field marks, heap closure) is
// re-evaluated over the whole element universe until nothing changes.
// Deliberately naive; the worklist engines are checked against it.
AnalysisResult naive_least_fixpoint(const ProgramModel& model,
                                    const AnalysisConfig& config = {},
                                    const OracleBudget& budget = {});

}  // namespace reach
