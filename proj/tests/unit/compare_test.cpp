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

#include "doctest.h"
#include "golden_models.hpp"
#include "reach/generator.hpp"
#include "reach/parser.hpp"
#include "reach/pta.hpp"

using namespace reach;

TEST_SUITE("compare") {

TEST_CASE("pta vs rta on the running example flags B.bar only") {
  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisResult pta = analyze_pta(m, {});
  AnalysisResult rta = analyze(m, {});
  DiffReport d = compare_results(m, pta, rta);
  CHECK(d.methods.only_in_a.empty());
  CHECK(d.methods.only_in_b == std::vector<std::string>{"B.bar()"});
  CHECK(d.types.only_in_a.empty());
  CHECK(d.types.only_in_b.empty());
  CHECK(d.methods.count_a == 4);
  CHECK(d.methods.count_b == 5);
  CHECK(d.methods.pct_delta() == 25);
}

TEST_CASE("self comparison is empty") {
  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisResult r = analyze(m, {});
  DiffReport d = compare_results(m, r, r);
  CHECK(d.methods.only_in_a.empty());
  CHECK(d.methods.only_in_b.empty());
  CHECK(d.types.only_in_a.empty());
  CHECK(d.types.only_in_b.empty());
  CHECK(d.fields.only_in_a.empty());
  CHECK(d.fields.only_in_b.empty());
  CHECK(d.methods.pct_delta() == 0);
}

TEST_CASE("results from different models do not compare") {
  ProgramModel m1 = parse_model(testing::kRunningExample);
  ProgramModel m2 = parse_model(testing::kEmptyMain);
  AnalysisResult r1 = analyze(m1, {});
  AnalysisResult r2 = analyze(m2, {});
  CHECK_THROWS_AS(compare_results(m1, r1, r2), ModelMismatchError);
}

TEST_CASE("diff counts obey set arithmetic on generated corpora") {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    CorpusSpec spec;
    spec.seed = seed;
    spec.type_count = 20;
    spec.method_count = 70;
    spec.heap_object_count = 6;
    ProgramModel m = generate_model(spec);
    AnalysisResult pta = analyze_pta(m, {});
    AnalysisResult rta = analyze(m, {});
    DiffReport d = compare_results(m, pta, rta);
    for (const ElementDiff* e : {&d.methods, &d.types, &d.fields}) {
      // |A| + |onlyInB| - |onlyInA| = |B|
      CHECK(e->count_a + e->only_in_b.size() - e->only_in_a.size() ==
            e->count_b);
    }
  }
}

TEST_CASE("percentage deltas recompute from the raw counts") {
  ElementDiff d;
  d.count_a = 18;
  d.count_b = 21;
  CHECK(d.pct_delta() == 17);  // 16.67 rounds to 17
  d.count_a = 0;
  CHECK(!d.pct_delta().has_value());
  d.count_a = 4;
  d.count_b = 3;
  CHECK(d.pct_delta() == -25);
}

TEST_CASE("text rendering mentions every diff element") {
  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisResult pta = analyze_pta(m, {});
  AnalysisResult rta = analyze(m, {});
  DiffReport d = compare_results(m, pta, rta);
  d.engine_a = "pta";
  d.engine_b = "rta";
  std::string text = render_diff_text(d);
  CHECK(text.find("only in rta: B.bar()") != std::string::npos);
  CHECK(text.find("+25%") != std::string::npos);
}

}  // TEST_SUITE
