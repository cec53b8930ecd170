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

#include "reach/hierarchy.hpp"

#include <algorithm>

namespace reach {
namespace {

void collect_supers(const ProgramModel& model, TypeId t,
                    std::vector<std::vector<TypeId>>& memo,
                    std::vector<bool>& done) {
  if (done[t.index()]) return;
  const TypeDecl& decl = model.type(t);
  std::vector<TypeId> out;
  out.push_back(t);
  auto merge = [&](TypeId parent) {
    collect_supers(model, parent, memo, done);
    for (TypeId u : memo[parent.index()]) {
      if (std::find(out.begin(), out.end(), u) == out.end()) {
        out.push_back(u);
      }
    }
  };
  if (decl.superclass) merge(*decl.superclass);
  for (TypeId i : decl.interfaces) merge(i);
  memo[t.index()] = std::move(out);
  done[t.index()] = true;
}

}  // namespace

Hierarchy::Hierarchy(const ProgramModel& model) : model_(&model) {
  size_t n = model.types.size();
  supers_.resize(n);
  subs_.resize(n);
  std::vector<bool> done(n, false);
  for (const TypeDecl& t : model.types) {
    collect_supers(model, t.id, supers_, done);
  }
  for (const TypeDecl& t : model.types) {
    for (TypeId u : supers_[t.id.index()]) {
      subs_[u.index()].push_back(t.id);
    }
  }
  for (std::vector<TypeId>& s : subs_) std::sort(s.begin(), s.end());
}

bool Hierarchy::is_subtype(TypeId sub, TypeId sup) const {
  const std::vector<TypeId>& s = subs_[sup.index()];
  return std::binary_search(s.begin(), s.end(), sub);
}

ResolveOutcome Hierarchy::resolve_method(TypeId receiver,
                                         MethodId declared) const {
  const ProgramModel& m = *model_;
  const MethodDecl& want = m.method(declared);

  auto matches = [&](MethodId mid) {
    const MethodDecl& cand = m.method(mid);
    return !cand.is_static && cand.name == want.name &&
           cand.params == want.params;
  };

  // Superclass chain first, nearest declaration with a body wins.
  std::optional<TypeId> cur = receiver;
  while (cur) {
    const TypeDecl& t = m.type(*cur);
    for (MethodId mid : t.methods) {
      if (matches(mid) && !m.method(mid).is_abstract) {
        return ResolveOutcome::resolved(mid);
      }
    }
    cur = t.superclass;
  }

  // Interface defaults: only a unique most-specific candidate resolves.
  std::vector<std::pair<TypeId, MethodId>> candidates;
  for (TypeId u : supertype_closure(receiver)) {
    const TypeDecl& t = m.type(u);
    if (t.kind != TypeKind::kInterface) continue;
    for (MethodId mid : t.methods) {
      if (matches(mid) && !m.method(mid).is_abstract) {
        candidates.emplace_back(u, mid);
      }
    }
  }
  if (candidates.empty()) return ResolveOutcome::no_target();

  std::vector<std::pair<TypeId, MethodId>> minimal;
  for (const auto& [iface, mid] : candidates) {
    bool shadowed = false;
    for (const auto& [other, omid] : candidates) {
      if (omid != mid && other != iface && is_subtype(other, iface)) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) minimal.emplace_back(iface, mid);
  }
  if (minimal.size() == 1) return ResolveOutcome::resolved(minimal[0].second);
  return ResolveOutcome::ambiguous();
}

}  // namespace reach
