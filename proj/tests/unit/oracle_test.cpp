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

#include "reach/oracle.hpp"

#include "doctest.h"
#include "golden_models.hpp"
#include "reach/parser.hpp"
#include "test_util.hpp"

using namespace reach;
using reach::testing::method_names;

TEST_SUITE("oracle") {

TEST_CASE("oracle agrees with the engine on the golden models") {
  for (const char* text :
       {testing::kRunningExample, testing::kEmptyMain, testing::kGuardedSpecial,
        testing::kGuardedSpecialInstantiated, testing::kEmbeddedConstant,
        testing::kEmbeddedConstantNoRead, testing::kStaticInitRead,
        testing::kStaticInitWriteOnly}) {
    ProgramModel m = parse_model(text);
    AnalysisResult engine = analyze(m, {});
    AnalysisResult oracle = naive_least_fixpoint(m);
    CHECK(same_result_sets(engine, oracle));
  }
}

TEST_CASE("oracle respects the collapsed-special configuration") {
  AnalysisConfig config;
  config.distinguish_special_invokes = false;
  ProgramModel m = parse_model(testing::kGuardedSpecial);
  AnalysisResult engine = analyze(m, config);
  AnalysisResult oracle = naive_least_fixpoint(m, config);
  CHECK(same_result_sets(engine, oracle));
  CHECK(method_names(m, oracle.reachable_methods)
            .count("VirtualThread.vsleep()") == 1);
}

TEST_CASE("empty main") {
  ProgramModel m = parse_model(testing::kEmptyMain);
  AnalysisResult r = naive_least_fixpoint(m);
  CHECK(method_names(m, r.reachable_methods) ==
        std::set<std::string>{"Main.main()"});
}

TEST_CASE("element budget rejects oversized models") {
  ProgramModel m = parse_model(testing::kRunningExample);
  OracleBudget budget;
  budget.max_elements = 3;
  CHECK_THROWS_AS(naive_least_fixpoint(m, {}, budget), BudgetExceededError);
}

}  // TEST_SUITE
