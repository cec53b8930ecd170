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

#include "reach/task_pool.hpp"

#include <atomic>
#include <thread>

#include "doctest.h"
#include "golden_models.hpp"
#include "reach/analysis.hpp"
#include "reach/concurrent.hpp"
#include "reach/parser.hpp"
#include "test_util.hpp"

using namespace reach;

TEST_SUITE("scheduler") {

TEST_CASE("mark returns true exactly once") {
  std::atomic<bool> flag{false};
  CHECK(mark(flag));
  CHECK(!mark(flag));
  CHECK(!mark(flag));
}

TEST_CASE("mark under contention: one winner per flag") {
  constexpr int kFlags = 2000;
  constexpr int kThreads = 16;
  std::vector<std::atomic<bool>> flags(kFlags);
  std::atomic<int> wins{0};

  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&] {
      int local = 0;
      for (int i = 0; i < kFlags; ++i) {
        if (mark(flags[i])) ++local;
      }
      wins.fetch_add(local);
    });
  }
  for (auto& t : threads) t.join();
  CHECK(wins.load() == kFlags);
}

TEST_CASE("append list keeps every pushed element") {
  AppendList<int> list;
  constexpr int kThreads = 8;
  constexpr int kPerThread = 1000;
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&list, t] {
      for (int i = 0; i < kPerThread; ++i) list.push(t * kPerThread + i);
    });
  }
  for (auto& t : threads) t.join();

  std::vector<bool> seen(kThreads * kPerThread, false);
  size_t count = 0;
  list.for_each([&](int v) {
    CHECK(!seen[v]);
    seen[v] = true;
    ++count;
  });
  CHECK(count == kThreads * kPerThread);
}

TEST_CASE("task pool reaches quiescence over spawned tasks") {
  TaskPool pool(4);
  std::atomic<int> done{0};
  // Each task spawns two children up to a depth; the pool must count all
  // of them before drain returns.
  std::function<void(int)> spawn = [&](int depth) {
    ++done;
    if (depth > 0) {
      pool.schedule([&spawn, depth] { spawn(depth - 1); });
      pool.schedule([&spawn, depth] { spawn(depth - 1); });
    }
  };
  pool.schedule([&spawn] { spawn(10); });
  pool.drain();
  CHECK(done.load() == (1 << 11) - 1);
}

TEST_CASE("a failing task aborts the run and drain rethrows") {
  TaskPool pool(4);
  for (int i = 0; i < 100; ++i) {
    pool.schedule([i] {
      if (i == 37) throw std::runtime_error("boom");
    });
  }
  CHECK_THROWS_AS(pool.drain(), std::runtime_error);
}

TEST_CASE("serial executor runs tasks in fifo order") {
  SerialExecutor exec;
  std::vector<int> order;
  exec.schedule([&] {
    order.push_back(0);
    exec.schedule([&] { order.push_back(2); });
  });
  exec.schedule([&] { order.push_back(1); });
  exec.drain();
  CHECK(order == std::vector<int>{0, 1, 2});
}

TEST_CASE("thread count does not change analysis results") {
  ProgramModel m = parse_model(reach::testing::kRunningExample);
  AnalysisConfig serial;
  serial.threads = 1;
  AnalysisResult base = analyze(m, serial);
  for (unsigned threads : {2u, 8u, 16u}) {
    AnalysisConfig config;
    config.threads = threads;
    AnalysisResult r = analyze(m, config);
    CHECK(same_result_sets(base, r));
  }
}

TEST_CASE("empty main under any thread count") {
  ProgramModel m = parse_model(reach::testing::kEmptyMain);
  for (unsigned threads : {1u, 4u, 16u}) {
    AnalysisConfig config;
    config.threads = threads;
    AnalysisResult r = analyze(m, config);
    CHECK(r.reachable_methods.size() == 1);
  }
}

}  // TEST_SUITE
