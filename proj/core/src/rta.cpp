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

#include <cassert>
#include <chrono>
#include <memory>

#include "reach/analysis.hpp"
#include "reach/heap_scanner.hpp"
#include "reach/hierarchy.hpp"
#include "reach/summary_store.hpp"
#include "reach/task_pool.hpp"

namespace reach {
namespace {

// Compact per-element provenance, rendered to strings after quiescence.
// Written only by the thread that wins the element's mark.
struct Prov {
  enum Kind : uint8_t {
    kNone,
    kRoot,
    kStaticInvoke,    // a = calling method
    kDirectSpecial,   // a = calling method (collapsed special)
    kVirtualDispatch, // a = declared method, b = receiver type
    kSpecialInvoke,   // a = declared method
    kAllocIn,         // a = allocating method
    kScannedObject,   // a = heap object
  };
  Kind kind = kNone;
  uint32_t a = 0;
  uint32_t b = 0;
};

class RtaEngine {
 public:
  RtaEngine(const ProgramModel& model, const Hierarchy& hierarchy,
            const AnalysisConfig& config, const SummaryStore* store,
            Executor& executor)
      : model_(model),
        hier_(hierarchy),
        config_(config),
        store_(store),
        exec_(executor),
        state_(model),
        scanner_(model,
                 HeapScanHooks{
                     [this](TypeId t, ObjectId via) {
                       register_as_instantiated(
                           t, {Prov::kScannedObject, via.index(), 0});
                     },
                     nullptr,
                     [this](FieldId f) { return state_.is_read(f); },
                 }),
        method_prov_(model.methods.size()),
        type_prov_(model.types.size()),
        summary_origin_(model.methods.size(),
                        AnalysisResult::SummaryOrigin::kNone) {}

  void run() {
    // Roots are invoked directly, without receiver checks.
    for (MethodId root : model_.roots) {
      register_as_invoked(root, {Prov::kRoot, 0, 0});
    }
    exec_.drain();
  }

  AnalysisResult finish(double seconds) {
    AnalysisResult r = assemble_result_sets(model_, state_,
                                            scanner_.image_heap_sorted());
    r.summaries_reused = reused_.load();
    r.summaries_extracted = extracted_.load();
    r.no_target_resolutions = no_target_.load();
    r.ambiguous_resolutions = ambiguous_.load();
    r.summary_origin = std::move(summary_origin_);
    r.analysis_seconds = seconds;
    render_provenance(r);
    return r;
  }

 private:
  void register_as_invoked(MethodId m, Prov why) {
    assert(!model_.method(m).is_abstract);
    if (mark(state_.invoked_flag(m))) {
      method_prov_[m.index()] = why;
      exec_.schedule([this, m] { on_invoked(m); });
    }
  }

  void on_invoked(MethodId m) {
    bool reused = false;
    MethodSummary summary =
        get_summary(model_, model_.method(m), store_, &reused);
    if (reused) {
      reused_.fetch_add(1, std::memory_order_relaxed);
      summary_origin_[m.index()] = AnalysisResult::SummaryOrigin::kReused;
    } else {
      extracted_.fetch_add(1, std::memory_order_relaxed);
      summary_origin_[m.index()] = AnalysisResult::SummaryOrigin::kExtracted;
    }
    apply_summary(m, summary);
  }

  void apply_summary(MethodId from, const MethodSummary& summary) {
    for (MethodId m : summary.static_invokes) {
      register_as_invoked(m, {Prov::kStaticInvoke, from.index(), 0});
    }
    for (MethodId m : summary.special_invokes) {
      if (config_.distinguish_special_invokes) {
        register_as_special_invoked(m);
      } else {
        // Collapsed mode: a special invoke behaves like a direct invoke.
        mark(state_.special_invoked_flag(m));
        register_as_invoked(m, {Prov::kDirectSpecial, from.index(), 0});
      }
    }
    for (MethodId m : summary.virtual_invokes) {
      register_as_virtual_invoked(m);
    }
    for (TypeId t : summary.instantiated_types) {
      register_as_instantiated(t, {Prov::kAllocIn, from.index(), 0});
    }
    for (FieldId f : summary.read_fields) register_field_read(f);
    for (FieldId f : summary.written_fields) register_field_written(f);
    for (ObjectId o : summary.embedded_constants) scanner_.scan_root(o);
  }

  void register_as_virtual_invoked(MethodId m) {
    if (!mark(state_.virtual_invoked_flag(m))) return;
    TypeId owner = model_.method(m).owner;
    // The publish must complete before the snapshot of the instantiated
    // subtypes: together with the mirrored order in
    // register_as_instantiated this guarantees no resolution is lost under
    // any interleaving.
    state_.virtual_invoked_methods(owner).push(m);
    state_.instantiated_subtypes(owner).for_each(
        [&](TypeId sub) { resolve_and_invoke(sub, m); });
  }

  void register_as_special_invoked(MethodId m) {
    if (!mark(state_.special_invoked_flag(m))) return;
    TypeId owner = model_.method(m).owner;
    state_.special_invoked_methods(owner).push(m);
    // Invoked only once some subtype of the declaring type exists; until
    // then the call sits latent in the per-type list.
    if (!state_.instantiated_subtypes(owner).empty()) {
      register_as_invoked(m, {Prov::kSpecialInvoke, m.index(), 0});
    }
  }

  void register_as_instantiated(TypeId t, Prov why) {
    if (!mark(state_.instantiated_flag(t))) return;
    type_prov_[t.index()] = why;
    auto supers = hier_.supertype_closure(t);
    // First pass publishes t everywhere; only then may the second pass
    // walk the invoked-method lists (see register_as_virtual_invoked).
    for (TypeId super : supers) {
      state_.instantiated_subtypes(super).push(t);
    }
    for (TypeId super : supers) {
      state_.virtual_invoked_methods(super).for_each(
          [&](MethodId m) { resolve_and_invoke(t, m); });
      state_.special_invoked_methods(super).for_each([&](MethodId m) {
        register_as_invoked(m, {Prov::kSpecialInvoke, m.index(), 0});
      });
    }
  }

  void resolve_and_invoke(TypeId receiver, MethodId declared) {
    ResolveOutcome outcome = hier_.resolve_method(receiver, declared);
    switch (outcome.status) {
      case ResolveStatus::kResolved:
        register_as_invoked(
            outcome.target,
            {Prov::kVirtualDispatch, declared.index(), receiver.index()});
        break;
      case ResolveStatus::kNoTarget:
        no_target_.fetch_add(1, std::memory_order_relaxed);
        break;
      case ResolveStatus::kAmbiguous:
        ambiguous_.fetch_add(1, std::memory_order_relaxed);
        break;
    }
  }

  void register_field_read(FieldId f) {
    if (mark(state_.read_flag(f))) scanner_.on_field_read(f);
  }

  void register_field_written(FieldId f) { mark(state_.written_flag(f)); }

  void render_provenance(AnalysisResult& r) const {
    r.method_provenance.resize(model_.methods.size());
    r.type_provenance.resize(model_.types.size());
    for (size_t i = 0; i < method_prov_.size(); ++i) {
      const Prov& p = method_prov_[i];
      std::string& out = r.method_provenance[i];
      switch (p.kind) {
        case Prov::kNone:
          break;
        case Prov::kRoot:
          out = "root";
          break;
        case Prov::kStaticInvoke:
          out = "static invoke from " + model_.method_token(MethodId(p.a));
          break;
        case Prov::kDirectSpecial:
          out = "special invoke (collapsed) from " +
                model_.method_token(MethodId(p.a));
          break;
        case Prov::kVirtualDispatch:
          out = "virtual dispatch of " + model_.method_token(MethodId(p.a)) +
                " on " + model_.type(TypeId(p.b)).name;
          break;
        case Prov::kSpecialInvoke:
          out = "special invoke of " + model_.method_token(MethodId(p.a));
          break;
        default:
          break;
      }
    }
    for (size_t i = 0; i < type_prov_.size(); ++i) {
      const Prov& p = type_prov_[i];
      std::string& out = r.type_provenance[i];
      switch (p.kind) {
        case Prov::kNone:
          break;
        case Prov::kAllocIn:
          out = "allocated in " + model_.method_token(MethodId(p.a));
          break;
        case Prov::kScannedObject:
          out = "heap object " + model_.object(ObjectId(p.a)).name;
          break;
        default:
          break;
      }
    }
  }

  const ProgramModel& model_;
  const Hierarchy& hier_;
  const AnalysisConfig& config_;
  const SummaryStore* store_;
  Executor& exec_;
  AnalysisState state_;
  HeapScanner scanner_;

  std::vector<Prov> method_prov_;
  std::vector<Prov> type_prov_;
  std::vector<AnalysisResult::SummaryOrigin> summary_origin_;
  std::atomic<uint64_t> reused_{0};
  std::atomic<uint64_t> extracted_{0};
  std::atomic<uint64_t> no_target_{0};
  std::atomic<uint64_t> ambiguous_{0};
};

}  // namespace

AnalysisResult analyze(const ProgramModel& model, const AnalysisConfig& config) {
  std::optional<SummaryStore> store;
  if (config.summary_store_path) {
    store = SummaryStore::load(*config.summary_store_path);
  }

  unsigned threads = std::max(1u, config.threads);
  auto start = std::chrono::steady_clock::now();

  Hierarchy hierarchy(model);
  std::unique_ptr<Executor> executor;
  if (threads == 1) {
    executor = std::make_unique<SerialExecutor>();
  } else {
    executor = std::make_unique<TaskPool>(threads);
  }
  RtaEngine engine(model, hierarchy, config, store ? &*store : nullptr,
                   *executor);
  engine.run();

  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  AnalysisResult result = engine.finish(seconds);

  if (config.emit_summaries_path) {
    emit_summary_store(model, result.reachable_methods,
                       *config.emit_summaries_path);
  }
  return result;
}

}  // namespace reach
