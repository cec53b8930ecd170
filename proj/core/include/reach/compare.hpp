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
#include <vector>

#include "reach/analysis.hpp"

namespace reach {

class ModelMismatchError : public std::runtime_error {
 public:
  ModelMismatchError()
      : std::runtime_error("results come from different models") {}
};

// Difference of two analysis results on one element class.
struct ElementDiff {
  std::vector<std::string> only_in_a;
  std::vector<std::string> only_in_b;
  size_t count_a = 0;
  size_t count_b = 0;

  // Percentage delta of B relative to A, rounded to the nearest integer;
  // no value when A is empty.
  std::optional<int> pct_delta() const;
};

struct DiffReport {
  std::string engine_a = "a";
  std::string engine_b = "b";
  ElementDiff methods;  // reachable methods
  ElementDiff types;    // instantiated types
  ElementDiff fields;   // accessed (read or written) fields

  double parse_seconds = 0.0;
  double analysis_a_seconds = 0.0;
  double analysis_b_seconds = 0.0;
  double total_seconds = 0.0;
};

// Symmetric difference per element class. Throws ModelMismatchError when
// the results carry different model fingerprints.
DiffReport compare_results(const ProgramModel& model, const AnalysisResult& a,
                           const AnalysisResult& b);

std::string render_diff_text(const DiffReport& report);

}  // namespace reach
