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

#include <span>
#include <vector>

#include "reach/model.hpp"

namespace reach {

enum class ResolveStatus {
  kResolved,
  kNoTarget,   // only abstract declarations found; skipped by the engines
  kAmbiguous,  // two unrelated interfaces supply competing default methods
};

struct ResolveOutcome {
  ResolveStatus status = ResolveStatus::kNoTarget;
  MethodId target;  // valid iff status == kResolved

  static ResolveOutcome resolved(MethodId m) {
    return {ResolveStatus::kResolved, m};
  }
  static ResolveOutcome no_target() { return {ResolveStatus::kNoTarget, {}}; }
  static ResolveOutcome ambiguous() { return {ResolveStatus::kAmbiguous, {}}; }
};

// Subtype queries and method resolution over a valid model. Immutable after
// construction; freely shared across threads.
class Hierarchy {
 public:
  // Precondition: validate(model) is empty (in particular, acyclic).
  explicit Hierarchy(const ProgramModel& model);

  const ProgramModel& model() const { return *model_; }

  // Reflexive supertype set: t itself first, then the superclass chain and
  // implemented interfaces toward the roots, deduplicated.
  std::span<const TypeId> supertype_closure(TypeId t) const {
    return supers_[t.index()];
  }

  // Reflexive transitive subtype set, ascending id order.
  std::span<const TypeId> subtype_closure(TypeId t) const {
    return subs_[t.index()];
  }

  bool is_subtype(TypeId sub, TypeId sup) const;

  // Virtual/interface call resolution for a concrete receiver type: walks
  // the receiver's superclass chain for a matching body, then falls back to
  // a unique most-specific interface default.
  ResolveOutcome resolve_method(TypeId receiver, MethodId declared) const;

 private:
  const ProgramModel* model_;
  std::vector<std::vector<TypeId>> supers_;
  std::vector<std::vector<TypeId>> subs_;
};

}  // namespace reach
