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

#include "reach/bench.hpp"

#include <cstdio>
#include <stdexcept>

#include "reach/analysis.hpp"
#include "reach/pta.hpp"

namespace reach {

BenchReport run_bench(const ProgramModel& model, const BenchSpec& spec) {
  BenchReport report;
  for (const std::string& engine : spec.engines) {
    if (engine != "rta" && engine != "pta") {
      throw std::invalid_argument("unknown engine '" + engine + "'");
    }
    for (unsigned threads : spec.thread_counts) {
      BenchRow row;
      row.engine = engine;
      row.threads = threads;
      for (int rep = 0; rep < spec.repetitions; ++rep) {
        AnalysisConfig config;
        config.threads = threads;
        config.distinguish_special_invokes = spec.distinguish_special_invokes;
        AnalysisResult result = engine == "rta" ? analyze(model, config)
                                                : analyze_pta(model, config);
        row.runs_seconds.push_back(result.analysis_seconds);
        row.reachable_methods = result.reachable_methods.size();
      }
      double sum = 0.0;
      for (double s : row.runs_seconds) sum += s;
      row.mean_seconds = sum / static_cast<double>(row.runs_seconds.size());
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string render_bench_text(const BenchReport& report) {
  std::string out = "engine threads mean_seconds runs reachable_methods\n";
  for (const BenchRow& row : report.rows) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-6s %7u %12.4f %4zu %17zu\n",
                  row.engine.c_str(), row.threads, row.mean_seconds,
                  row.runs_seconds.size(), row.reachable_methods);
    out += buf;
  }
  return out;
}

}  // namespace reach
