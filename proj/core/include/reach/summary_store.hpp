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

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "reach/model.hpp"

namespace reach {

// Purely textual method summary as persisted across builds. Elements are
// identified by their stable string form: types by full name, methods by
// "Owner.name(Sig)", fields by "Owner.name". No model-internal handles.
struct SerializedSummary {
  std::string method_id;
  std::string body_hash;
  std::vector<std::string> static_invokes;
  std::vector<std::string> virtual_invokes;
  std::vector<std::string> special_invokes;
  std::vector<std::string> instantiated_types;
  std::vector<std::string> read_fields;
  std::vector<std::string> written_fields;
  std::vector<std::string> embedded_constants;  // trivial constants only

  friend bool operator==(const SerializedSummary&,
                         const SerializedSummary&) = default;
};

class StoreFormatError : public std::runtime_error {
 public:
  StoreFormatError(const std::string& message, int line)
      : std::runtime_error("summary store line " + std::to_string(line) +
                           ": " + message) {}
};

class NotReusableError : public std::runtime_error {
 public:
  explicit NotReusableError(const std::string& reason)
      : std::runtime_error("summary not reusable: " + reason) {}
};

// Summary reuse policy knobs.
struct StoreOptions {
  // Identifiers matching any of these patterns are treated as generated
  // and hence unstable across builds.
  std::vector<std::string> unstable_name_patterns = {"\\$Lambda\\$", "\\$\\$",
                                                     "\\$Proxy"};
};

// Serialized summaries of a previous build, keyed by method id and loaded
// wholly into memory. Read-only during analysis.
class SummaryStore {
 public:
  static SummaryStore load(const std::string& path);
  void save(const std::string& path) const;

  const SerializedSummary* find(const std::string& method_id) const {
    auto it = entries_.find(method_id);
    return it == entries_.end() ? nullptr : &it->second;
  }
  void insert(SerializedSummary summary) {
    entries_[summary.method_id] = std::move(summary);
  }
  size_t size() const { return entries_.size(); }
  const std::map<std::string, SerializedSummary>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, SerializedSummary> entries_;
};

// Hex digest over the canonical serialization of the body; stable across
// runs and platforms.
std::string method_hash(const ProgramModel& model, const MethodDecl& method);

// A summary may be persisted only when every identifier it mentions is
// stable and every embedded constant is a trivial object.
bool is_reusable(const ProgramModel& model, const MethodSummary& summary,
                 const MethodDecl& method, const StoreOptions& options = {});

// Throws NotReusableError when is_reusable is false.
SerializedSummary serialize_summary(const ProgramModel& model,
                                    const MethodSummary& summary,
                                    const MethodDecl& method,
                                    const StoreOptions& options = {});

struct SummaryResolution {
  std::optional<MethodSummary> summary;
  std::string failed_identifier;  // first failing identifier when empty()
};

// Maps the textual identifiers back onto the current model, iterating the
// owner's declared members; any lookup failure makes the whole summary
// unresolvable and the caller falls back to fresh extraction.
SummaryResolution resolve_summary(const SerializedSummary& serialized,
                                  const ProgramModel& model);

// Obtains a summary for the method: a valid store entry with a matching
// body hash resolves to the stored summary, anything else extracts from
// the body. `reused` reports which path was taken.
MethodSummary get_summary(const ProgramModel& model, const MethodDecl& method,
                          const SummaryStore* store, bool* reused = nullptr);

// Writes reusable summaries of the given (reachable) methods to path.
void emit_summary_store(const ProgramModel& model,
                        std::span<const MethodId> methods,
                        const std::string& path,
                        const StoreOptions& options = {});

}  // namespace reach
