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

namespace reach {

HeapScanner::HeapScanner(const ProgramModel& model, HeapScanHooks hooks)
    : model_(&model),
      hooks_(std::move(hooks)),
      scanned_(model.heap.size()),
      pending_by_field_(model.fields.size()) {}

void HeapScanner::follow_value(FieldId f, ObjectId value,
                               std::vector<ObjectId>& stack) {
  if (hooks_.field_value) hooks_.field_value(f, value);
  stack.push_back(value);
}

void HeapScanner::scan_root(ObjectId obj) {
  std::vector<ObjectId> stack;
  stack.push_back(obj);
  while (!stack.empty()) {
    ObjectId oid = stack.back();
    stack.pop_back();
    if (!mark(scanned_[oid.index()])) continue;

    const HeapObject& o = model_->object(oid);
    hooks_.type_instantiated(o.type, oid);

    for (const auto& [f, v] : o.field_values) {
      if (hooks_.field_is_read(f)) {
        follow_value(f, v, stack);
      } else {
        // Park first, then re-check: if the read mark landed between the
        // two steps, either we see it here or the reader's pending sweep
        // sees our parked entry.
        pending_by_field_[f.index()].push(oid);
        if (hooks_.field_is_read(f)) follow_value(f, v, stack);
      }
    }
    for (ObjectId e : o.elements) stack.push_back(e);
  }
}

void HeapScanner::on_field_read(FieldId f) {
  const FieldDecl& field = model_->field(f);
  if (field.is_static) {
    const TypeDecl& owner = model_->type(field.owner);
    if (owner.build_time_initialized) {
      for (const auto& [sf, value] : owner.static_field_values) {
        if (sf == f) {
          std::vector<ObjectId> stack;
          follow_value(f, value, stack);
          for (ObjectId v : stack) scan_root(v);
        }
      }
    }
  }
  pending_by_field_[f.index()].for_each([&](ObjectId holder) {
    const HeapObject& o = model_->object(holder);
    for (const auto& [hf, v] : o.field_values) {
      if (hf == f) {
        if (hooks_.field_value) hooks_.field_value(f, v);
        scan_root(v);
      }
    }
  });
}

std::vector<ObjectId> HeapScanner::image_heap_sorted() const {
  std::vector<ObjectId> out;
  for (size_t i = 0; i < scanned_.size(); ++i) {
    if (scanned_[i].load(std::memory_order_seq_cst)) {
      out.push_back(ObjectId(static_cast<uint32_t>(i)));
    }
  }
  return out;
}

}  // namespace reach
