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

#include <atomic>

namespace reach {

// Atomic test-and-set. Returns true exactly once per flag across all
// threads: the caller that wins the transition owns the one-time work.
inline bool mark(std::atomic<bool>& flag) {
  bool expected = false;
  return flag.compare_exchange_strong(expected, true,
                                      std::memory_order_seq_cst);
}

// Append-only set with lock-free push and weakly consistent iteration: a
// traversal observes at least every element pushed before it started.
//
// Sequential consistency here is load-bearing. The engines run the pattern
// "append to my list, then iterate the peer list" from two sides
// concurrently; with plain acquire/release both sides could miss each
// other's append, losing a resolution. The total order of seq_cst
// operations guarantees at least one side sees the other.
template <typename T>
class AppendList {
 public:
  AppendList() = default;
  AppendList(const AppendList&) = delete;
  AppendList& operator=(const AppendList&) = delete;

  ~AppendList() {
    Node* n = head_.load(std::memory_order_relaxed);
    while (n != nullptr) {
      Node* next = n->next;
      delete n;
      n = next;
    }
  }

  // Caller is responsible for at-most-once insertion per value (the
  // engines guard every push with a mark()).
  void push(T value) {
    Node* node = new Node{value, head_.load(std::memory_order_relaxed)};
    while (!head_.compare_exchange_weak(node->next, node,
                                        std::memory_order_seq_cst)) {
    }
  }

  bool empty() const { return head_.load(std::memory_order_seq_cst) == nullptr; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (Node* n = head_.load(std::memory_order_seq_cst); n != nullptr;
         n = n->next) {
      fn(n->value);
    }
  }

 private:
  struct Node {
    T value;
    Node* next;
  };
  std::atomic<Node*> head_{nullptr};
};

}  // namespace reach
