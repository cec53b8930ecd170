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

#include "reach/summary_store.hpp"

#include <fstream>

#include "doctest.h"
#include "golden_models.hpp"
#include "reach/analysis.hpp"
#include "reach/parser.hpp"
#include "reach/summary.hpp"
#include "test_util.hpp"

using namespace reach;
using reach::testing::TempDir;

namespace {

MethodId method_by_token(const ProgramModel& m, const std::string& token) {
  for (const MethodDecl& d : m.methods) {
    if (m.method_token(d.id) == token) return d.id;
  }
  REQUIRE(false);
  return MethodId();
}

}  // namespace

TEST_SUITE("summary-store") {

TEST_CASE("method hash: equality, sensitivity, order") {
  const char* text = R"(
class A
  method static one(): void
    x = new A
    invokestatic A.two()()
    return
  method static two(): void
    x = new A
    invokestatic A.two()()
    return
  method static three(): void
    x = new A
    return
  method static four(): void
    invokestatic A.two()()
    x = new A
    return
root A.one()
)";
  ProgramModel m = parse_model(text);
  auto hash_of = [&](const char* token) {
    return method_hash(m, m.method(method_by_token(m, token)));
  };
  // Textually identical bodies hash equal.
  CHECK(hash_of("A.one()") == hash_of("A.two()"));
  // One instruction difference changes the digest.
  CHECK(hash_of("A.one()") != hash_of("A.three()"));
  // The hash covers the literal sequence: reordering changes it.
  CHECK(hash_of("A.one()") != hash_of("A.four()"));
  CHECK(hash_of("A.one()").size() == 64);  // sha-256 hex
}

TEST_CASE("reusability: stable names and trivial constants") {
  ProgramModel m = parse_model(testing::kRunningExample);
  MethodId log = method_by_token(m, "Hello.log()");
  MethodSummary s = extract_summary(m, m.method(log));
  CHECK(is_reusable(m, s, m.method(log)));

  const char* generated = R"(
class Foo$$Lambda$17
  method static run(): void
    return
class Main
  method static main(): void
    invokestatic Foo$$Lambda$17.run()()
    return
root Main.main()
)";
  ProgramModel g = parse_model(generated);
  MethodId main = method_by_token(g, "Main.main()");
  MethodSummary gs = extract_summary(g, g.method(main));
  CHECK(!is_reusable(g, gs, g.method(main)));
  // The generated method itself is unstable too.
  MethodId lambda_run = method_by_token(g, "Foo$$Lambda$17.run()");
  MethodSummary empty = extract_summary(g, g.method(lambda_run));
  CHECK(!is_reusable(g, empty, g.method(lambda_run)));
}

TEST_CASE("non-trivial embedded constants block reuse") {
  ProgramModel m = parse_model(testing::kEmbeddedConstant);
  MethodId main = method_by_token(m, "App.main()");
  MethodSummary s = extract_summary(m, m.method(main));
  CHECK(!is_reusable(m, s, m.method(main)));
  CHECK_THROWS_AS(serialize_summary(m, s, m.method(main)), NotReusableError);

  // Marking the constant trivial flips the verdict.
  ProgramModel trivial = m;
  trivial.heap[trivial.find_object("h1").index()].trivial = true;
  trivial.reindex();
  CHECK(is_reusable(trivial, s, trivial.method(main)));
}

TEST_CASE("serialization is deterministic and resolves back") {
  ProgramModel m = parse_model(testing::kRunningExample);
  MethodId main = method_by_token(m, "Hello.main()");
  MethodSummary s = extract_summary(m, m.method(main));

  SerializedSummary a = serialize_summary(m, s, m.method(main));
  SerializedSummary b = serialize_summary(m, s, m.method(main));
  CHECK(a == b);
  CHECK(a.method_id == "Hello.main()");
  CHECK(a.body_hash == method_hash(m, m.method(main)));

  SummaryResolution res = resolve_summary(a, m);
  REQUIRE(res.summary.has_value());
  CHECK(*res.summary == s);
}

TEST_CASE("empty summary serializes to seven empty sections") {
  ProgramModel m = parse_model(testing::kEmptyMain);
  MethodId main = m.roots[0];
  MethodSummary s = extract_summary(m, m.method(main));
  SerializedSummary ser = serialize_summary(m, s, m.method(main));
  CHECK(ser.static_invokes.empty());
  CHECK(ser.virtual_invokes.empty());
  CHECK(ser.special_invokes.empty());
  CHECK(ser.instantiated_types.empty());
  CHECK(ser.read_fields.empty());
  CHECK(ser.written_fields.empty());
  CHECK(ser.embedded_constants.empty());
  SummaryResolution res = resolve_summary(ser, m);
  REQUIRE(res.summary.has_value());
  CHECK(res.summary->empty());
}

TEST_CASE("resolution reports the first missing identifier") {
  ProgramModel m = parse_model(testing::kRunningExample);
  MethodId main = method_by_token(m, "Hello.main()");
  SerializedSummary ser =
      serialize_summary(m, extract_summary(m, m.method(main)), m.method(main));

  // A model without class B cannot resolve the instantiated-type entry.
  SerializedSummary broken = ser;
  broken.instantiated_types = {"Gone"};
  SummaryResolution res = resolve_summary(broken, m);
  CHECK(!res.summary.has_value());
  CHECK(res.failed_identifier == "Gone");
}

TEST_CASE("overloads resolve through their signatures") {
  const char* text = R"(
class A
class B
class Util
  method static go(A): void
    return
  method static go(B): void
    return
class Main
  method static main(): void
    a = new A
    invokestatic Util.go(A)(a)
    return
root Main.main()
)";
  ProgramModel m = parse_model(text);
  MethodId main = method_by_token(m, "Main.main()");
  SerializedSummary ser =
      serialize_summary(m, extract_summary(m, m.method(main)), m.method(main));
  REQUIRE(ser.static_invokes.size() == 1);
  CHECK(ser.static_invokes[0] == "Util.go(A)");
  SummaryResolution res = resolve_summary(ser, m);
  REQUIRE(res.summary.has_value());
  CHECK(res.summary->static_invokes ==
        std::set<MethodId>{method_by_token(m, "Util.go(A)")});
}

TEST_CASE("get_summary: cold, warm, and hash-mismatch paths") {
  ProgramModel m = parse_model(testing::kRunningExample);
  MethodId log = method_by_token(m, "Hello.log()");
  MethodSummary s = extract_summary(m, m.method(log));

  bool reused = true;
  MethodSummary cold = get_summary(m, m.method(log), nullptr, &reused);
  CHECK(!reused);
  CHECK(cold == s);

  SummaryStore store;
  store.insert(serialize_summary(m, s, m.method(log)));
  MethodSummary warm = get_summary(m, m.method(log), &store, &reused);
  CHECK(reused);
  CHECK(warm == s);

  // Edit the body: the stored hash no longer matches.
  ProgramModel edited = m;
  edited.methods[log.index()].body.insert(
      edited.methods[log.index()].body.begin(),
      Alloc{LocalId(static_cast<uint32_t>(
                edited.methods[log.index()].local_names.size())),
            edited.find_type("A")});
  edited.methods[log.index()].local_names.push_back("extra");
  edited.reindex();
  MethodSummary fresh = get_summary(edited, edited.method(log), &store, &reused);
  CHECK(!reused);
  CHECK(fresh.instantiated_types.size() == 2);  // A and B now
}

TEST_CASE("store files round-trip and reject garbage") {
  TempDir tmp;
  ProgramModel m = parse_model(testing::kRunningExample);
  SummaryStore store;
  for (const char* token : {"Hello.main()", "Hello.log()", "Hello.foo(I)"}) {
    MethodId id = method_by_token(m, token);
    store.insert(
        serialize_summary(m, extract_summary(m, m.method(id)), m.method(id)));
  }
  std::string path = tmp.file("summaries.txt");
  store.save(path);

  SummaryStore loaded = SummaryStore::load(path);
  CHECK(loaded.size() == 3);
  CHECK(loaded.entries() == store.entries());

  std::string bad = tmp.file("bad.txt");
  {
    std::ofstream out(bad);
    out << "not-a-store 9\n";
  }
  CHECK_THROWS_AS(SummaryStore::load(bad), StoreFormatError);
  CHECK_THROWS_AS(SummaryStore::load(tmp.file("missing.txt")),
                  StoreFormatError);
}

TEST_CASE("warm analysis reuses summaries and skips edited methods") {
  TempDir tmp;
  std::string store_path = tmp.file("sums.txt");

  ProgramModel m = parse_model(testing::kRunningExample);
  AnalysisConfig emit;
  emit.emit_summaries_path = store_path;
  AnalysisResult cold = analyze(m, emit);
  CHECK(cold.summaries_extracted == 5);
  CHECK(cold.summaries_reused == 0);

  AnalysisConfig warm;
  warm.summary_store_path = store_path;
  AnalysisResult r = analyze(m, warm);
  CHECK(same_result_sets(cold, r));
  CHECK(r.summaries_reused == 5);
  CHECK(r.summaries_extracted == 0);

  // Swap the two independent allocations in main: same summary, new hash.
  ProgramModel edited = parse_model(testing::kRunningExample);
  MethodId main = method_by_token(edited, "Hello.main()");
  std::swap(edited.methods[main.index()].body[0],
            edited.methods[main.index()].body[1]);
  AnalysisResult warm2 = analyze(edited, warm);
  CHECK(same_result_sets(cold, warm2));
  CHECK(warm2.summaries_reused == 4);
  CHECK(warm2.summaries_extracted == 1);
  CHECK(warm2.summary_origin[main.index()] ==
        AnalysisResult::SummaryOrigin::kExtracted);
}

}  // TEST_SUITE
