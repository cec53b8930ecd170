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

#include "reach/pta.hpp"

#include "doctest.h"
#include "golden_models.hpp"
#include "reach/parser.hpp"
#include "test_util.hpp"

using namespace reach;
using reach::testing::method_names;
using reach::testing::type_names;

namespace {

using Node = TypeFlowGraph::Node;
using NodeKind = TypeFlowGraph::NodeKind;

MethodId method_by_token(const ProgramModel& m, const std::string& token) {
  for (const MethodDecl& d : m.methods) {
    if (m.method_token(d.id) == token) return d.id;
  }
  REQUIRE(false);
  return MethodId();
}

std::set<std::string> node_state(const ProgramModel& m, const Node& n) {
  std::set<std::string> out;
  for (TypeId t : n.types) out.insert(m.type(t).name);
  return out;
}

}  // namespace

TEST_SUITE("pta") {

TEST_CASE("running example: B.bar is not reachable") {
  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisResult r = analyze_pta(m, {});
  CHECK(method_names(m, r.reachable_methods) ==
        std::set<std::string>{"Hello.main()", "Hello.log()", "Hello.foo(I)",
                              "A.bar()"});
  CHECK(type_names(m, r.instantiated_types) ==
        std::set<std::string>{"Hello", "A", "B"});
}

TEST_CASE("running example graph wires receiver and argument sources") {
  ProgramModel m = parse_model(testing::kRunningExample);
  PtaOutput out = analyze_pta_with_graph(m, {});
  const TypeFlowGraph& g = out.graph;

  MethodId main = method_by_token(m, "Hello.main()");
  const TypeFlowGraph::MethodFlow& mf = g.methods[main.index()];
  REQUIRE(mf.built);

  // Locate the allocation nodes of main and the virtual site of foo.
  uint32_t alloc_hello = kInvalidIndex;
  uint32_t alloc_a = kInvalidIndex;
  for (uint32_t n : mf.nodes) {
    if (g.nodes[n].kind == NodeKind::kAlloc) {
      const std::string& name = m.types[g.nodes[n].aux].name;
      if (name == "Hello") alloc_hello = n;
      if (name == "A") alloc_a = n;
    }
  }
  REQUIRE(alloc_hello != kInvalidIndex);
  REQUIRE(alloc_a != kInvalidIndex);

  const TypeFlowGraph::InvocationSite* foo_site = nullptr;
  for (uint32_t si : mf.sites) {
    if (m.method_token(g.sites[si].declared) == "Hello.foo(I)") {
      foo_site = &g.sites[si];
    }
  }
  REQUIRE(foo_site != nullptr);

  // The Hello allocation feeds the receiver port, the A allocation is the
  // argument source.
  CHECK(foo_site->receiver_source == alloc_hello);
  const auto& out_edges = g.nodes[alloc_hello].out_edges;
  CHECK(std::find(out_edges.begin(), out_edges.end(),
                  foo_site->receiver_port) != out_edges.end());
  REQUIRE(foo_site->arg_sources.size() == 1);
  CHECK(foo_site->arg_sources[0] == alloc_a);

  // The textual dump carries the same facts.
  std::string dump = dump_type_flow_graph(m, g);
  CHECK(dump.find("alloc Hello local=h") != std::string::npos);
  CHECK(dump.find("alloc A local=a") != std::string::npos);
  CHECK(dump.find("virtual Hello.foo(I)") != std::string::npos);
}

TEST_CASE("allocation without use edges never dispatches") {
  ProgramModel m = parse_model(testing::kRunningExample);
  PtaOutput out = analyze_pta_with_graph(m, {});
  const TypeFlowGraph& g = out.graph;

  MethodId log = method_by_token(m, "Hello.log()");
  const TypeFlowGraph::MethodFlow& mf = g.methods[log.index()];
  REQUIRE(mf.built);
  bool found = false;
  for (uint32_t n : mf.nodes) {
    if (g.nodes[n].kind == NodeKind::kAlloc &&
        m.types[g.nodes[n].aux].name == "B") {
      found = true;
      CHECK(g.nodes[n].out_edges.empty());
      CHECK(node_state(m, g.nodes[n]) == std::set<std::string>{"B"});
    }
  }
  CHECK(found);

  // I.bar() resolves only against A.
  for (const auto& site : g.sites) {
    if (m.method_token(site.declared) == "I.bar()") {
      REQUIRE(site.linked.size() == 1);
      CHECK(m.method_token(site.linked[0]) == "A.bar()");
    }
  }
}

TEST_CASE("empty main") {
  ProgramModel m = parse_model(testing::kEmptyMain);
  AnalysisResult r = analyze_pta(m, {});
  CHECK(method_names(m, r.reachable_methods) ==
        std::set<std::string>{"Main.main()"});
}

TEST_CASE("declared-type filters cut unrelated types") {
  const char* text = R"(
interface I
  method abstract bar(): void
class A implements I
  method bar(): void
    return
class Hello
class Util
  method static sink(I): void
    return
class Main
  method static main(): void
    a = new A
    h = new Hello
    invokestatic Util.sink(I)(a)
    invokestatic Util.sink(I)(h)
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  PtaOutput out = analyze_pta_with_graph(m, {});
  const TypeFlowGraph& g = out.graph;
  MethodId sink = method_by_token(m, "Util.sink(I)");
  const TypeFlowGraph::MethodFlow& mf = g.methods[sink.index()];
  REQUIRE(mf.built);
  REQUIRE(mf.formals.size() == 1);
  // Both A and Hello flow in; the I-typed formal keeps only A.
  CHECK(node_state(m, g.nodes[mf.formals[0]]) == std::set<std::string>{"A"});
}

TEST_CASE("types flow through returns into invocation results") {
  const char* text = R"(
class A
  method ping(): void
    return
class Util
  method static make(): A
    x = new A
    return x
class Main
  method static main(): void
    y = invokestatic Util.make()()
    invokevirtual A.ping()(y)
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze_pta(m, {});
  CHECK(method_names(m, r.reachable_methods).count("A.ping()") == 1);
}

TEST_CASE("field flows are a single join point") {
  const char* text = R"(
interface I
  method abstract bar(): void
class A implements I
  method bar(): void
    return
class B implements I
  method bar(): void
    return
class Holder
  field item: I
class Main
  method static main(): void
    h = new Holder
    a = new A
    b = new B
    putfield h, Holder.item, a
    invokestatic Main.other()()
    x = getfield h, Holder.item
    invokevirtual I.bar()(x)
    return
  method static other(): void
    h2 = new Holder
    b2 = new B
    putfield h2, Holder.item, b2
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  AnalysisResult r = analyze_pta(m, {});
  // Stores from both methods join: both bars dispatch.
  auto reach = method_names(m, r.reachable_methods);
  CHECK(reach.count("A.bar()") == 1);
  CHECK(reach.count("B.bar()") == 1);
}

TEST_CASE("special invokes link only when the receiver can exist") {
  ProgramModel guarded = parse_model(testing::kGuardedSpecial);
  AnalysisResult r1 = analyze_pta(guarded, {});
  CHECK(method_names(guarded, r1.reachable_methods)
            .count("VirtualThread.vsleep()") == 0);

  const char* flowing = R"(
class Thread
  method static sleep(): void
    t = invokestatic Thread.current()()
    invokespecial VirtualThread.vsleep()(t)
    return
  method static current(): Thread
    t = new VirtualThread
    return t
class VirtualThread extends Thread
  method vsleep(): void
    return
class Main
  method static main(): void
    invokestatic Thread.sleep()()
    return
root Main.main()
)";
  ProgramModel m2 = parse_model(flowing);
  AnalysisResult r2 = analyze_pta(m2, {});
  CHECK(method_names(m2, r2.reachable_methods)
            .count("VirtualThread.vsleep()") == 1);
}

TEST_CASE("heap-scanned types feed field loads") {
  ProgramModel m = parse_model(testing::kEmbeddedConstant);
  AnalysisResult r = analyze_pta(m, {});
  CHECK(method_names(m, r.reachable_methods).count("Component.execute()") == 1);
  CHECK(type_names(m, r.instantiated_types).count("Component") == 1);

  ProgramModel no_read = parse_model(testing::kEmbeddedConstantNoRead);
  AnalysisResult r2 = analyze_pta(no_read, {});
  CHECK(method_names(no_read, r2.reachable_methods)
            .count("Component.execute()") == 0);
}

TEST_CASE("repeat arrivals add no duplicate links") {
  const char* text = R"(
interface I
  method abstract bar(): void
class A implements I
  method bar(): void
    return
class A2 extends A
class Main
  method static main(): void
    x = new A
    y = new A2
    invokestatic Main.use(I)(x)
    invokestatic Main.use(I)(y)
    return
  method static use(I): void
    invokevirtual I.bar()(p0)
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  PtaOutput out = analyze_pta_with_graph(m, {});
  for (const auto& site : out.graph.sites) {
    if (m.method_token(site.declared) == "I.bar()") {
      // A and A2 both resolve to A.bar(): linked exactly once.
      CHECK(site.linked.size() == 1);
    }
  }
}

}  // TEST_SUITE
