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

#include "reach/compare.hpp"

#include <algorithm>
#include <cmath>

namespace reach {

std::optional<int> ElementDiff::pct_delta() const {
  if (count_a == 0) return std::nullopt;
  double delta = (static_cast<double>(count_b) - static_cast<double>(count_a)) *
                 100.0 / static_cast<double>(count_a);
  return static_cast<int>(std::lround(delta));
}

namespace {

template <typename T, typename NameFn>
ElementDiff diff_sets(const std::vector<T>& a, const std::vector<T>& b,
                      NameFn&& name) {
  ElementDiff d;
  d.count_a = a.size();
  d.count_b = b.size();
  std::vector<T> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(only_b));
  for (T id : only_a) d.only_in_a.push_back(name(id));
  for (T id : only_b) d.only_in_b.push_back(name(id));
  return d;
}

std::vector<FieldId> accessed_fields(const AnalysisResult& r) {
  std::vector<FieldId> out;
  std::set_union(r.read_fields.begin(), r.read_fields.end(),
                 r.written_fields.begin(), r.written_fields.end(),
                 std::back_inserter(out));
  return out;
}

}  // namespace

DiffReport compare_results(const ProgramModel& model, const AnalysisResult& a,
                           const AnalysisResult& b) {
  if (a.model_fingerprint != b.model_fingerprint) {
    throw ModelMismatchError();
  }
  DiffReport report;
  report.methods = diff_sets(a.reachable_methods, b.reachable_methods,
                             [&](MethodId m) { return model.method_token(m); });
  report.types = diff_sets(a.instantiated_types, b.instantiated_types,
                           [&](TypeId t) { return model.type(t).name; });
  report.fields = diff_sets(accessed_fields(a), accessed_fields(b),
                            [&](FieldId f) { return model.field_token(f); });
  report.analysis_a_seconds = a.analysis_seconds;
  report.analysis_b_seconds = b.analysis_seconds;
  return report;
}

std::string render_diff_text(const DiffReport& r) {
  std::string out;
  auto pct = [](const ElementDiff& d) -> std::string {
    std::optional<int> p = d.pct_delta();
    if (!p) return "n/a";
    return (*p >= 0 ? "+" : "") + std::to_string(*p) + "%";
  };
  auto section = [&](const char* label, const ElementDiff& d) {
    out += std::string(label) + ": " + r.engine_a + "=" +
           std::to_string(d.count_a) + " " + r.engine_b + "=" +
           std::to_string(d.count_b) + " (" + pct(d) + ")\n";
    for (const std::string& e : d.only_in_a) {
      out += "  only in " + r.engine_a + ": " + e + "\n";
    }
    for (const std::string& e : d.only_in_b) {
      out += "  only in " + r.engine_b + ": " + e + "\n";
    }
  };
  section("reachable methods", r.methods);
  section("instantiated types", r.types);
  section("accessed fields", r.fields);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "timings: parse=%.3fs %s=%.3fs %s=%.3fs total=%.3fs\n",
                r.parse_seconds, r.engine_a.c_str(), r.analysis_a_seconds,
                r.engine_b.c_str(), r.analysis_b_seconds, r.total_seconds);
  out += buf;
  return out;
}

}  // namespace reach
