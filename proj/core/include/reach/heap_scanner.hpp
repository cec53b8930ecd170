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
#include <functional>
#include <vector>

#include "reach/concurrent.hpp"
#include "reach/model.hpp"

namespace reach {

// Engine-side callbacks driven by the scanner.
struct HeapScanHooks {
  // A scanned object's type must be treated as instantiated.
  std::function<void(TypeId type, ObjectId object)> type_instantiated;
  // Object `value` is known to sit in field `field` whose reads are live.
  // Optional; used by the type-flow engine to seed field flows.
  std::function<void(FieldId field, ObjectId value)> field_value;
  // Current read mark of a field; must be monotone.
  std::function<bool(FieldId field)> field_is_read;
};

// Build-time heap traversal working in tandem with the analysis: only
// values of read fields are followed, array elements always. Objects whose
// field is not yet read are parked and rescanned if the field becomes read
// later, which makes the result independent of event order. Scan calls may
// run concurrently on analysis threads.
class HeapScanner {
 public:
  HeapScanner(const ProgramModel& model, HeapScanHooks hooks);

  HeapScanner(const HeapScanner&) = delete;
  HeapScanner& operator=(const HeapScanner&) = delete;

  // Includes obj and everything reachable from it through read fields into
  // the image heap. Roots are embedded constants and values of read static
  // fields of build-time-initialized types.
  void scan_root(ObjectId obj);

  // Notification that f transitioned to read: releases parked objects and
  // values of matching initialized static fields.
  void on_field_read(FieldId f);

  bool in_image_heap(ObjectId obj) const {
    return scanned_[obj.index()].load(std::memory_order_seq_cst);
  }

  std::vector<ObjectId> image_heap_sorted() const;

 private:
  void follow_value(FieldId f, ObjectId value, std::vector<ObjectId>& stack);

  const ProgramModel* model_;
  HeapScanHooks hooks_;
  std::vector<std::atomic<bool>> scanned_;
  std::vector<AppendList<ObjectId>> pending_by_field_;
};

}  // namespace reach
