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

#include "reach/heap_scanner.hpp"

#include <set>

#include "doctest.h"
#include "golden_models.hpp"
#include "reach/analysis.hpp"
#include "reach/parser.hpp"
#include "test_util.hpp"

using namespace reach;
using reach::testing::method_names;
using reach::testing::object_names;
using reach::testing::type_names;

namespace {

// Drives the scanner directly with a manual read-set.
struct ManualScan {
  explicit ManualScan(const ProgramModel& model)
      : read_flags(model.fields.size(), false),
        scanner(model, HeapScanHooks{
                           [this, &model](TypeId t, ObjectId) {
                             instantiated.insert(model.type(t).name);
                           },
                           nullptr,
                           [this](FieldId f) { return read_flags[f.index()]; },
                       }) {}

  void set_read(FieldId f) {
    read_flags[f.index()] = true;
    scanner.on_field_read(f);
  }

  std::vector<bool> read_flags;
  std::set<std::string> instantiated;
  HeapScanner scanner;
};

}  // namespace

TEST_SUITE("heap-scanner") {

TEST_CASE("embedded constant makes its type a dispatch target") {
  ProgramModel m = parse_model(testing::kEmbeddedConstant);
  AnalysisResult r = analyze(m, {});
  CHECK(type_names(m, r.instantiated_types).count("Component") == 1);
  CHECK(method_names(m, r.reachable_methods).count("Component.execute()") == 1);
  CHECK(object_names(m, r.image_heap_objects) ==
        std::set<std::string>{"h1", "c1"});
}

TEST_CASE("removing the field read removes type and target") {
  ProgramModel m = parse_model(testing::kEmbeddedConstantNoRead);
  AnalysisResult r = analyze(m, {});
  CHECK(type_names(m, r.instantiated_types).count("Component") == 0);
  CHECK(method_names(m, r.reachable_methods).count("Component.execute()") == 0);
  CHECK(object_names(m, r.image_heap_objects) == std::set<std::string>{"h1"});
}

TEST_CASE("object without fields only instantiates its type") {
  const char* text = R"(
class Box
class Main
  method static main(): void
    c = const o1
    return
object o1: Box
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  CHECK(type_names(m, r.instantiated_types) == std::set<std::string>{"Box"});
  CHECK(object_names(m, r.image_heap_objects) == std::set<std::string>{"o1"});
}

TEST_CASE("reference cycles terminate with both objects in the image heap") {
  const char* text = R"(
class Box
  field next: Box
class Main
  method static main(): void
    c = const o1
    x = getfield c, Box.next
    return
object o1: Box {Box.next -> o2}
object o2: Box {Box.next -> o1}
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  CHECK(object_names(m, r.image_heap_objects) ==
        std::set<std::string>{"o1", "o2"});
}

TEST_CASE("array elements are always followed") {
  const char* text = R"(
class Box
array Boxes of Box
class Main
  method static main(): void
    c = const arr
    return
object arr: Boxes [b1, b2]
object b1: Box
object b2: Box
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  CHECK(object_names(m, r.image_heap_objects) ==
        std::set<std::string>{"arr", "b1", "b2"});
  CHECK(type_names(m, r.instantiated_types) ==
        std::set<std::string>{"Boxes", "Box"});
}

TEST_CASE("scan and read events commute") {
  const char* text = R"(
class Box
  field next: Inner
class Inner
class Main
  method static main(): void
    return
object o1: Box {Box.next -> o2}
object o2: Inner
root Main.main()
)";
  ProgramModel m = parse_model(text);
  FieldId next = m.find_field(m.find_type("Box"), "next");
  ObjectId o1 = m.find_object("o1");

  ManualScan scan_first(m);
  scan_first.scanner.scan_root(o1);
  CHECK(scan_first.instantiated == std::set<std::string>{"Box"});
  scan_first.set_read(next);

  ManualScan read_first(m);
  read_first.set_read(next);
  read_first.scanner.scan_root(o1);

  CHECK(scan_first.instantiated == read_first.instantiated);
  CHECK(scan_first.instantiated == std::set<std::string>{"Box", "Inner"});
  CHECK(scan_first.scanner.in_image_heap(m.find_object("o2")));
  CHECK(read_first.scanner.in_image_heap(m.find_object("o2")));
}

TEST_CASE("repeated reads cause a single scan, values of unread fields stay out") {
  const char* text = R"(
class Box
  field a: Box
  field b: Box
class Main
  method static main(): void
    c = const o1
    x = getfield c, Box.a
    y = getfield x, Box.a
    return
object o1: Box {Box.a -> o2, Box.b -> o3}
object o2: Box
object o3: Box
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze(m, {});
  // Box.b is never read, so o3 must not enter the image heap.
  CHECK(object_names(m, r.image_heap_objects) ==
        std::set<std::string>{"o1", "o2"});
}

TEST_CASE("deleting values of never-read fields leaves results unchanged") {
  ProgramModel m = parse_model(testing::kEmbeddedConstantNoRead);
  AnalysisResult before = analyze(m, {});

  ProgramModel stripped = m;
  for (HeapObject& o : stripped.heap) {
    std::erase_if(o.field_values, [&](const auto& kv) {
      return !std::binary_search(before.read_fields.begin(),
                                 before.read_fields.end(), kv.first);
    });
  }
  stripped.reindex();
  AnalysisResult after = analyze(stripped, {});
  CHECK(same_result_sets(before, after));
}

}  // TEST_SUITE
