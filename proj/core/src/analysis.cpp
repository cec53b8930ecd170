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

#include <algorithm>

namespace reach {

namespace {

template <typename T>
bool sorted_subset(const std::vector<T>& a, const std::vector<T>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool same_result_sets(const AnalysisResult& a, const AnalysisResult& b) {
  return a.reachable_methods == b.reachable_methods &&
         a.instantiated_types == b.instantiated_types &&
         a.virtual_invoked_methods == b.virtual_invoked_methods &&
         a.special_invoked_methods == b.special_invoked_methods &&
         a.read_fields == b.read_fields && a.written_fields == b.written_fields &&
         a.image_heap_objects == b.image_heap_objects;
}

bool result_sets_subset(const AnalysisResult& a, const AnalysisResult& b) {
  return sorted_subset(a.reachable_methods, b.reachable_methods) &&
         sorted_subset(a.instantiated_types, b.instantiated_types) &&
         sorted_subset(a.virtual_invoked_methods, b.virtual_invoked_methods) &&
         sorted_subset(a.special_invoked_methods, b.special_invoked_methods) &&
         sorted_subset(a.read_fields, b.read_fields) &&
         sorted_subset(a.written_fields, b.written_fields) &&
         sorted_subset(a.image_heap_objects, b.image_heap_objects);
}

uint64_t fingerprint_model(const ProgramModel& model) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const TypeDecl& t : model.types) mix(t.name);
  for (const MethodDecl& m : model.methods) mix(model.method_token(m.id));
  for (const FieldDecl& f : model.fields) mix(model.field_token(f.id));
  for (const HeapObject& o : model.heap) mix(o.name);
  for (MethodId r : model.roots) mix(model.method_token(r));
  return h;
}

AnalysisResult assemble_result_sets(const ProgramModel& model,
                                    AnalysisState& state,
                                    std::vector<ObjectId> image_heap) {
  AnalysisResult r;
  for (const MethodDecl& m : model.methods) {
    if (state.invoked_flag(m.id).load(std::memory_order_seq_cst)) {
      r.reachable_methods.push_back(m.id);
    }
    if (state.virtual_invoked_flag(m.id).load(std::memory_order_seq_cst)) {
      r.virtual_invoked_methods.push_back(m.id);
    }
    if (state.special_invoked_flag(m.id).load(std::memory_order_seq_cst)) {
      r.special_invoked_methods.push_back(m.id);
    }
  }
  for (const TypeDecl& t : model.types) {
    if (state.instantiated_flag(t.id).load(std::memory_order_seq_cst)) {
      r.instantiated_types.push_back(t.id);
    }
  }
  for (const FieldDecl& f : model.fields) {
    if (state.read_flag(f.id).load(std::memory_order_seq_cst)) {
      r.read_fields.push_back(f.id);
    }
    if (state.written_flag(f.id).load(std::memory_order_seq_cst)) {
      r.written_fields.push_back(f.id);
    }
  }
  std::sort(image_heap.begin(), image_heap.end());
  r.image_heap_objects = std::move(image_heap);
  r.model_fingerprint = fingerprint_model(model);
  return r;
}

}  // namespace reach
