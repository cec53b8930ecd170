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

#include <algorithm>

namespace reach {

namespace {
constexpr size_t kDequeueBatch = 32;
}

TaskPool::TaskPool(unsigned thread_count) {
  workers_.reserve(std::max(1u, thread_count));
  for (unsigned i = 0; i < std::max(1u, thread_count); ++i) {
    workers_.emplace_back([this] { worker_loop(); });
  }
}

TaskPool::~TaskPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stop_ = true;
  }
  work_ready_.notify_all();
  for (std::thread& w : workers_) w.join();
}

void TaskPool::schedule(Task task) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    ++in_flight_;
    queue_.push_back(std::move(task));
  }
  work_ready_.notify_one();
}

void TaskPool::finish_one() {
  std::lock_guard<std::mutex> lock(mutex_);
  if (--in_flight_ == 0) quiescent_.notify_all();
}

void TaskPool::worker_loop() {
  std::vector<Task> batch;
  batch.reserve(kDequeueBatch);
  while (true) {
    batch.clear();
    {
      std::unique_lock<std::mutex> lock(mutex_);
      work_ready_.wait(lock, [this] { return stop_ || !queue_.empty(); });
      if (stop_ && queue_.empty()) return;
      size_t take = std::min(kDequeueBatch, queue_.size());
      for (size_t i = 0; i < take; ++i) {
        batch.push_back(std::move(queue_.front()));
        queue_.pop_front();
      }
      if (!queue_.empty()) work_ready_.notify_one();
    }
    for (Task& task : batch) {
      bool skip;
      {
        std::lock_guard<std::mutex> lock(mutex_);
        skip = aborted_;
      }
      if (!skip) {
        try {
          task();
        } catch (...) {
          std::lock_guard<std::mutex> lock(mutex_);
          if (!failure_) failure_ = std::current_exception();
          aborted_ = true;
        }
      }
      finish_one();
    }
  }
}

void TaskPool::drain() {
  std::unique_lock<std::mutex> lock(mutex_);
  quiescent_.wait(lock, [this] { return in_flight_ == 0; });
  if (failure_) {
    std::exception_ptr f = failure_;
    failure_ = nullptr;
    aborted_ = false;
    lock.unlock();
    std::rethrow_exception(f);
  }
}

}  // namespace reach
