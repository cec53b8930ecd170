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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reach/concurrent.hpp"
#include "reach/model.hpp"

namespace reach {

struct AnalysisConfig {
  unsigned threads = 1;
  // Collapsing special invokes into direct invokes stays sound but loses
  // the "target guarded by instantiation" precision.
  bool distinguish_special_invokes = true;
  std::optional<std::string> summary_store_path;   // consume
  std::optional<std::string> emit_summaries_path;  // produce
};

// Shared mutable analysis state. All flags are monotone (set once, never
// cleared) and updated by atomic test-and-set; the append sets allow
// concurrent push plus weakly consistent iteration. Shared by the
// reachability engines and the heap scanner.
class AnalysisState {
 public:
  explicit AnalysisState(const ProgramModel& model)
      : types_(model.types.size()),
        methods_(model.methods.size()),
        fields_(model.fields.size()) {}

  AnalysisState(const AnalysisState&) = delete;
  AnalysisState& operator=(const AnalysisState&) = delete;

  std::atomic<bool>& instantiated_flag(TypeId t) {
    return types_[t.index()].instantiated;
  }
  AppendList<MethodId>& virtual_invoked_methods(TypeId t) {
    return types_[t.index()].virtual_invoked;
  }
  AppendList<MethodId>& special_invoked_methods(TypeId t) {
    return types_[t.index()].special_invoked;
  }
  AppendList<TypeId>& instantiated_subtypes(TypeId t) {
    return types_[t.index()].instantiated_subtypes;
  }

  std::atomic<bool>& invoked_flag(MethodId m) {
    return methods_[m.index()].invoked;
  }
  std::atomic<bool>& virtual_invoked_flag(MethodId m) {
    return methods_[m.index()].virtual_invoked;
  }
  std::atomic<bool>& special_invoked_flag(MethodId m) {
    return methods_[m.index()].special_invoked;
  }

  std::atomic<bool>& read_flag(FieldId f) { return fields_[f.index()].read; }
  std::atomic<bool>& written_flag(FieldId f) {
    return fields_[f.index()].written;
  }

  bool is_instantiated(TypeId t) const {
    return types_[t.index()].instantiated.load(std::memory_order_seq_cst);
  }
  bool is_invoked(MethodId m) const {
    return methods_[m.index()].invoked.load(std::memory_order_seq_cst);
  }
  bool is_read(FieldId f) const {
    return fields_[f.index()].read.load(std::memory_order_seq_cst);
  }

 private:
  struct TypeState {
    std::atomic<bool> instantiated{false};
    AppendList<MethodId> virtual_invoked;
    AppendList<MethodId> special_invoked;
    AppendList<TypeId> instantiated_subtypes;
  };
  struct MethodState {
    std::atomic<bool> invoked{false};
    std::atomic<bool> virtual_invoked{false};
    std::atomic<bool> special_invoked{false};
  };
  struct FieldState {
    std::atomic<bool> read{false};
    std::atomic<bool> written{false};
  };

  std::vector<TypeState> types_;
  std::vector<MethodState> methods_;
  std::vector<FieldState> fields_;
};

struct AnalysisResult {
  // The seven result sets, each sorted ascending. Comparisons between
  // engines and against the reference fixpoint cover exactly these.
  std::vector<MethodId> reachable_methods;
  std::vector<TypeId> instantiated_types;
  std::vector<MethodId> virtual_invoked_methods;
  std::vector<MethodId> special_invoked_methods;
  std::vector<FieldId> read_fields;
  std::vector<FieldId> written_fields;
  std::vector<ObjectId> image_heap_objects;

  // Why each element was reached, indexed by id; empty = unreached.
  // Schedule-dependent and excluded from result comparisons.
  std::vector<std::string> method_provenance;
  std::vector<std::string> type_provenance;

  enum class SummaryOrigin : uint8_t { kNone, kExtracted, kReused };
  std::vector<SummaryOrigin> summary_origin;  // per method
  uint64_t summaries_reused = 0;
  uint64_t summaries_extracted = 0;

  uint64_t no_target_resolutions = 0;
  uint64_t ambiguous_resolutions = 0;

  double analysis_seconds = 0.0;
  uint64_t model_fingerprint = 0;

  bool method_reachable(MethodId m) const {
    return std::binary_search(reachable_methods.begin(),
                              reachable_methods.end(), m);
  }
  bool type_instantiated(TypeId t) const {
    return std::binary_search(instantiated_types.begin(),
                              instantiated_types.end(), t);
  }
};

// Set equality / inclusion over the seven result sets only.
bool same_result_sets(const AnalysisResult& a, const AnalysisResult& b);
bool result_sets_subset(const AnalysisResult& a, const AnalysisResult& b);

// Structural fingerprint used to reject comparisons across different
// models.
uint64_t fingerprint_model(const ProgramModel& model);

// Collects the seven sets out of shared state; image heap supplied by the
// scanner.
AnalysisResult assemble_result_sets(const ProgramModel& model,
                                    AnalysisState& state,
                                    std::vector<ObjectId> image_heap);

// Whole-program reachability fixpoint (worklist engine). Precondition:
// validate(model) is empty. config.threads > 1 runs the identical engine
// on a task pool; results are set-identical for every thread count.
AnalysisResult analyze(const ProgramModel& model, const AnalysisConfig& config);

}  // namespace reach
