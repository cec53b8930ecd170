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

#include <string>
#include <vector>

#include "reach/model.hpp"

namespace reach {

struct BenchSpec {
  std::vector<std::string> engines = {"rta", "pta"};
  std::vector<unsigned> thread_counts = {1};
  int repetitions = 3;
  bool distinguish_special_invokes = true;
};

struct BenchRow {
  std::string engine;
  unsigned threads = 1;
  std::vector<double> runs_seconds;
  double mean_seconds = 0.0;
  size_t reachable_methods = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

// Wall-clock analysis time per engine per thread count, repeated runs with
// mean. Engines: "rta" (worklist engine) and "pta" (type-flow baseline,
// always single-threaded).
BenchReport run_bench(const ProgramModel& model, const BenchSpec& spec);

std::string render_bench_text(const BenchReport& report);

}  // namespace reach
