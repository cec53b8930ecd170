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

#include "reach/analysis.hpp"

#include "doctest.h"
#include "golden_models.hpp"
#include "reach/parser.hpp"
#include "test_util.hpp"

using namespace reach;
using reach::testing::field_names;
using reach::testing::method_names;
using reach::testing::type_names;

TEST_SUITE("rta") {

TEST_CASE("running example reaches exactly the known sets") {
  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisResult r = analyze(m, {});

  CHECK(method_names(m, r.reachable_methods) ==
        std::set<std::string>{"Hello.main()", "Hello.log()", "Hello.foo(I)",
                              "A.bar()", "B.bar()"});
  CHECK(type_names(m, r.instantiated_types) ==
        std::set<std::string>{"Hello", "A", "B"});
  CHECK(r.summaries_extracted == 5);
  CHECK(r.summaries_reused == 0);
}

TEST_CASE("virtually-invoked does not imply invoked") {
  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisResult r = analyze(m, {});
  auto virt = method_names(m, r.virtual_invoked_methods);
  auto reach = method_names(m, r.reachable_methods);
  CHECK(virt.count("I.bar()") == 1);
  CHECK(reach.count("I.bar()") == 0);
  CHECK(virt.count("Hello.foo(I)") == 1);
  CHECK(reach.count("Hello.foo(I)") == 1);
}

TEST_CASE("empty main reaches only itself") {
  ProgramModel m = parse_model(testing::kEmptyMain);
  AnalysisResult r = analyze(m, {});
  CHECK(method_names(m, r.reachable_methods) ==
        std::set<std::string>{"Main.main()"});
  CHECK(r.instantiated_types.empty());
  CHECK(r.image_heap_objects.empty());
}

TEST_CASE("guarded special invoke stays dead without an instance") {
  ProgramModel m = parse_model(testing::kGuardedSpecial);
  AnalysisResult r = analyze(m, {});
  auto reach = method_names(m, r.reachable_methods);
  CHECK(reach.count("VirtualThread.vsleep()") == 0);
  CHECK(method_names(m, r.special_invoked_methods) ==
        std::set<std::string>{"VirtualThread.vsleep()"});
}

TEST_CASE("guarded special invoke fires once the type is instantiated") {
  ProgramModel m = parse_model(testing::kGuardedSpecialInstantiated);
  AnalysisResult r = analyze(m, {});
  CHECK(method_names(m, r.reachable_methods).count("VirtualThread.vsleep()") ==
        1);
}

TEST_CASE("collapsing special invokes loses the guard") {
  AnalysisConfig config;
  config.distinguish_special_invokes = false;

  ProgramModel plain = parse_model(testing::kGuardedSpecial);
  AnalysisResult r1 = analyze(plain, config);
  CHECK(method_names(plain, r1.reachable_methods)
            .count("VirtualThread.vsleep()") == 1);

  ProgramModel inst = parse_model(testing::kGuardedSpecialInstantiated);
  AnalysisResult r2 = analyze(inst, config);
  CHECK(method_names(inst, r2.reachable_methods)
            .count("VirtualThread.vsleep()") == 1);
}

TEST_CASE("special invoke on an already-instantiated type fires immediately") {
  const char* text = R"(
class Box
  method poke(): void
    return
class Main
  method static main(): void
    b = new Box
    invokespecial Box.poke()(b)
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  CHECK(method_names(m, r.reachable_methods).count("Box.poke()") == 1);
}

TEST_CASE("virtual registration and instantiation commute") {
  // Same program, but the root's body orders the two trigger calls
  // differently, so the engine observes the events in opposite order.
  const char* call_then_alloc = R"(
interface I
  method abstract m(): void
class C implements I
  method m(): void
    return
class Main
  method static main(): void
    invokestatic Main.calls()()
    invokestatic Main.allocs()()
    return
  method static calls(): void
    x = new Main
    invokevirtual I.m()(x)
    return
  method static allocs(): void
    c = new C
    return
root Main.main()
)";
  const char* alloc_then_call = R"(
interface I
  method abstract m(): void
class C implements I
  method m(): void
    return
class Main
  method static main(): void
    invokestatic Main.allocs()()
    invokestatic Main.calls()()
    return
  method static calls(): void
    x = new Main
    invokevirtual I.m()(x)
    return
  method static allocs(): void
    c = new C
    return
root Main.main()
)";
  ProgramModel m1 = parse_model(call_then_alloc);
  ProgramModel m2 = parse_model(alloc_then_call);
  AnalysisResult r1 = analyze(m1, {});
  AnalysisResult r2 = analyze(m2, {});
  CHECK(method_names(m1, r1.reachable_methods) ==
        method_names(m2, r2.reachable_methods));
  CHECK(method_names(m1, r1.reachable_methods).count("C.m()") == 1);
}

TEST_CASE("duplicate call sites change nothing") {
  const char* once = R"(
class Main
  method static helper(): void
    return
  method static main(): void
    invokestatic Main.helper()()
    return
root Main.main()
)";
  const char* twice = R"(
class Main
  method static helper(): void
    return
  method static main(): void
    invokestatic Main.helper()()
    invokestatic Main.helper()()
    return
root Main.main()
)";
  ProgramModel m1 = parse_model(once);
  ProgramModel m2 = parse_model(twice);
  CHECK(method_names(m1, analyze(m1, {}).reachable_methods) ==
        method_names(m2, analyze(m2, {}).reachable_methods));
}

TEST_CASE("roots are invoked without receiver checks") {
  const char* text = R"(
class Never
  method run(): void
    return
root Never.run()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  CHECK(method_names(m, r.reachable_methods) ==
        std::set<std::string>{"Never.run()"});
  CHECK(r.instantiated_types.empty());
}

TEST_CASE("interface defaults become targets via dispatch") {
  const char* text = R"(
interface I
  method m(): void
    return
class C implements I
class Main
  method static main(): void
    c = new C
    invokevirtual I.m()(c)
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  CHECK(method_names(m, r.reachable_methods).count("I.m()") == 1);
}

TEST_CASE("no-target resolutions are skipped and counted") {
  const char* text = R"(
interface I
  method abstract m(): void
class C implements I
class Main
  method static main(): void
    c = new C
    invokevirtual I.m()(c)
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  CHECK(method_names(m, r.reachable_methods) ==
        std::set<std::string>{"Main.main()"});
  CHECK(r.no_target_resolutions == 1);
}

TEST_CASE("field marks: write-only fields are never scanned") {
  ProgramModel read_model = parse_model(testing::kStaticInitRead);
  AnalysisResult r1 = analyze(read_model, {});
  CHECK(field_names(read_model, r1.read_fields) ==
        std::set<std::string>{"Env.config"});
  CHECK(reach::testing::object_names(read_model, r1.image_heap_objects) ==
        std::set<std::string>{"b1"});
  CHECK(type_names(read_model, r1.instantiated_types).count("Box") == 1);
  CHECK(method_names(read_model, r1.reachable_methods).count("Box.poke()") ==
        1);

  ProgramModel write_model = parse_model(testing::kStaticInitWriteOnly);
  AnalysisResult r2 = analyze(write_model, {});
  CHECK(field_names(write_model, r2.written_fields) ==
        std::set<std::string>{"Env.config"});
  CHECK(r2.read_fields.empty());
  CHECK(r2.image_heap_objects.empty());
}

TEST_CASE("provenance is recorded for every reached element") {
  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisResult r = analyze(m, {});
  for (MethodId mid : r.reachable_methods) {
    CHECK(!r.method_provenance[mid.index()].empty());
  }
  for (TypeId t : r.instantiated_types) {
    CHECK(!r.type_provenance[t.index()].empty());
  }
  CHECK(r.method_provenance[m.roots[0].index()] == "root");
}

}  // TEST_SUITE
