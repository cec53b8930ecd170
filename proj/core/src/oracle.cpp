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

#include "reach/oracle.hpp"

#include <chrono>
#include <map>
#include <set>

#include "reach/hierarchy.hpp"
#include "reach/summary.hpp"

namespace reach {

AnalysisResult naive_least_fixpoint(const ProgramModel& model,
                                    const AnalysisConfig& config,
                                    const OracleBudget& budget) {
  size_t universe =
      model.types.size() + model.methods.size() + model.fields.size();
  if (universe > budget.max_elements) {
    throw BudgetExceededError(std::to_string(universe) + " elements, limit " +
                              std::to_string(budget.max_elements));
  }

  auto start = std::chrono::steady_clock::now();
  Hierarchy hier(model);

  std::set<MethodId> reachable;
  std::set<TypeId> instantiated;
  std::set<MethodId> virtual_marked;
  std::set<MethodId> special_marked;
  std::set<FieldId> read_fields;
  std::set<FieldId> written_fields;
  std::set<ObjectId> image_heap;
  std::map<MethodId, MethodSummary> summaries;
  uint64_t no_target = 0;
  uint64_t ambiguous = 0;

  auto summary_of = [&](MethodId m) -> const MethodSummary& {
    auto it = summaries.find(m);
    if (it == summaries.end()) {
      it = summaries.emplace(m, extract_summary(model, model.method(m))).first;
    }
    return it->second;
  };

  for (MethodId r : model.roots) reachable.insert(r);

  bool changed = true;
  size_t rounds = 0;
  while (changed) {
    if (++rounds > budget.max_rounds) {
      throw BudgetExceededError("no fixpoint after " +
                                std::to_string(budget.max_rounds) + " rounds");
    }
    changed = false;
    no_target = 0;
    ambiguous = 0;

    auto add_method = [&](MethodId m) {
      if (reachable.insert(m).second) changed = true;
    };
    auto add_type = [&](TypeId t) {
      if (instantiated.insert(t).second) changed = true;
    };

    // Summary projection of every reachable method.
    for (MethodId m : reachable) {
      const MethodSummary& s = summary_of(m);
      for (MethodId c : s.static_invokes) add_method(c);
      for (MethodId c : s.special_invokes) {
        if (special_marked.insert(c).second) changed = true;
        if (!config.distinguish_special_invokes) add_method(c);
      }
      for (MethodId c : s.virtual_invokes) {
        if (virtual_marked.insert(c).second) changed = true;
      }
      for (TypeId t : s.instantiated_types) add_type(t);
      for (FieldId f : s.read_fields) {
        if (read_fields.insert(f).second) changed = true;
      }
      for (FieldId f : s.written_fields) {
        if (written_fields.insert(f).second) changed = true;
      }
    }

    // Heap closure, rebuilt from scratch: embedded constants of reachable
    // methods and values of read static fields of initialized types are
    // roots; read instance fields and array elements are edges.
    std::set<ObjectId> heap_now;
    std::vector<ObjectId> stack;
    auto push_object = [&](ObjectId o) {
      if (heap_now.insert(o).second) stack.push_back(o);
    };
    for (MethodId m : reachable) {
      for (ObjectId o : summary_of(m).embedded_constants) push_object(o);
    }
    for (const TypeDecl& t : model.types) {
      if (!t.build_time_initialized) continue;
      for (const auto& [f, value] : t.static_field_values) {
        if (read_fields.count(f)) push_object(value);
      }
    }
    while (!stack.empty()) {
      ObjectId oid = stack.back();
      stack.pop_back();
      const HeapObject& o = model.object(oid);
      add_type(o.type);
      for (const auto& [f, v] : o.field_values) {
        if (read_fields.count(f)) push_object(v);
      }
      for (ObjectId e : o.elements) push_object(e);
    }
    if (heap_now != image_heap) {
      image_heap = std::move(heap_now);
      changed = true;
    }

    // Virtual dispatch: every instantiated subtype of the declaring type
    // of a virtually invoked method resolves to a reachable target.
    for (MethodId d : virtual_marked) {
      TypeId owner = model.method(d).owner;
      for (TypeId sub : hier.subtype_closure(owner)) {
        if (!instantiated.count(sub)) continue;
        ResolveOutcome r = hier.resolve_method(sub, d);
        if (r.status == ResolveStatus::kResolved) {
          add_method(r.target);
        } else if (r.status == ResolveStatus::kNoTarget) {
          ++no_target;
        } else {
          ++ambiguous;
        }
      }
    }

    // Special invokes fire once any subtype of the declaring type exists.
    if (config.distinguish_special_invokes) {
      for (MethodId d : special_marked) {
        TypeId owner = model.method(d).owner;
        for (TypeId sub : hier.subtype_closure(owner)) {
          if (instantiated.count(sub)) {
            add_method(d);
            break;
          }
        }
      }
    }
  }

  AnalysisResult r;
  r.reachable_methods.assign(reachable.begin(), reachable.end());
  r.instantiated_types.assign(instantiated.begin(), instantiated.end());
  r.virtual_invoked_methods.assign(virtual_marked.begin(),
                                   virtual_marked.end());
  r.special_invoked_methods.assign(special_marked.begin(),
                                   special_marked.end());
  r.read_fields.assign(read_fields.begin(), read_fields.end());
  r.written_fields.assign(written_fields.begin(), written_fields.end());
  r.image_heap_objects.assign(image_heap.begin(), image_heap.end());
  r.summaries_extracted = reachable.size();
  r.no_target_resolutions = no_target;
  r.ambiguous_resolutions = ambiguous;
  r.model_fingerprint = fingerprint_model(model);
  r.analysis_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

}  // namespace reach
