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

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace reach {

using Task = std::function<void()>;

// Task execution surface of the analysis. Tasks may schedule further
// tasks; drain() returns once no task is running or pending (quiescence).
class Executor {
 public:
  virtual ~Executor() = default;
  virtual void schedule(Task task) = 0;
  virtual void drain() = 0;
};

// FIFO queue drained on the calling thread. Single-threaded analysis runs
// the same engine code through this executor; the queue is the worklist.
class SerialExecutor : public Executor {
 public:
  void schedule(Task task) override { queue_.push_back(std::move(task)); }

  void drain() override {
    while (!queue_.empty()) {
      Task task = std::move(queue_.front());
      queue_.pop_front();
      task();
    }
  }

 private:
  std::deque<Task> queue_;
};

// Fixed-size thread pool with quiescence detection by in-flight counting:
// the count goes up at schedule time and down after the task body ran, so
// it can only reach zero when no task is pending, running, or about to be
// produced by a running task.
//
// Workers dequeue in batches to keep lock traffic low; a task failure
// aborts the run and drain() rethrows the first captured exception.
class TaskPool : public Executor {
 public:
  explicit TaskPool(unsigned thread_count);
  ~TaskPool() override;

  TaskPool(const TaskPool&) = delete;
  TaskPool& operator=(const TaskPool&) = delete;

  void schedule(Task task) override;
  void drain() override;

  unsigned thread_count() const { return static_cast<unsigned>(workers_.size()); }

 private:
  void worker_loop();
  void finish_one();

  std::mutex mutex_;
  std::condition_variable work_ready_;
  std::condition_variable quiescent_;
  std::deque<Task> queue_;
  size_t in_flight_ = 0;  // scheduled but not yet finished
  bool stop_ = false;
  bool aborted_ = false;
  std::exception_ptr failure_;
  std::vector<std::thread> workers_;
};

}  // namespace reach
