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

#include "reach/summary_store.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "reach/parser.hpp"
#include "reach/summary.hpp"

namespace reach {

namespace {

constexpr const char* kStoreHeader = "reach-summary-store 1";

std::string to_hex(const unsigned char* data, size_t len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (size_t i = 0; i < len; ++i) {
    out.push_back(digits[data[i] >> 4]);
    out.push_back(digits[data[i] & 0xf]);
  }
  return out;
}

std::vector<std::regex> compile_patterns(const StoreOptions& options) {
  std::vector<std::regex> out;
  out.reserve(options.unstable_name_patterns.size());
  for (const std::string& p : options.unstable_name_patterns) {
    out.emplace_back(p);
  }
  return out;
}

bool unstable(const std::string& identifier,
              const std::vector<std::regex>& patterns) {
  for (const std::regex& re : patterns) {
    if (std::regex_search(identifier, re)) return true;
  }
  return false;
}

std::vector<std::string> sorted_tokens(const ProgramModel& model,
                                       const std::set<MethodId>& ids) {
  std::vector<std::string> out;
  for (MethodId id : ids) out.push_back(model.method_token(id));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string method_hash(const ProgramModel& model, const MethodDecl& method) {
  std::string body = serialize_body(model, method);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(body.data(), body.size(), digest, &len, EVP_sha256(), nullptr);
  return to_hex(digest, len);
}

bool is_reusable(const ProgramModel& model, const MethodSummary& summary,
                 const MethodDecl& method, const StoreOptions& options) {
  std::vector<std::regex> patterns = compile_patterns(options);

  if (unstable(model.method_token(method.id), patterns)) return false;
  for (MethodId m : summary.static_invokes) {
    if (unstable(model.method_token(m), patterns)) return false;
  }
  for (MethodId m : summary.virtual_invokes) {
    if (unstable(model.method_token(m), patterns)) return false;
  }
  for (MethodId m : summary.special_invokes) {
    if (unstable(model.method_token(m), patterns)) return false;
  }
  for (TypeId t : summary.instantiated_types) {
    if (unstable(model.type(t).name, patterns)) return false;
  }
  for (FieldId f : summary.read_fields) {
    if (unstable(model.field_token(f), patterns)) return false;
  }
  for (FieldId f : summary.written_fields) {
    if (unstable(model.field_token(f), patterns)) return false;
  }
  for (ObjectId o : summary.embedded_constants) {
    if (!model.object(o).trivial) return false;
    if (unstable(model.object(o).name, patterns)) return false;
  }
  return true;
}

SerializedSummary serialize_summary(const ProgramModel& model,
                                    const MethodSummary& summary,
                                    const MethodDecl& method,
                                    const StoreOptions& options) {
  if (!is_reusable(model, summary, method, options)) {
    throw NotReusableError(model.method_token(method.id));
  }
  SerializedSummary out;
  out.method_id = model.method_token(method.id);
  out.body_hash = method_hash(model, method);
  out.static_invokes = sorted_tokens(model, summary.static_invokes);
  out.virtual_invokes = sorted_tokens(model, summary.virtual_invokes);
  out.special_invokes = sorted_tokens(model, summary.special_invokes);
  for (TypeId t : summary.instantiated_types) {
    out.instantiated_types.push_back(model.type(t).name);
  }
  for (FieldId f : summary.read_fields) {
    out.read_fields.push_back(model.field_token(f));
  }
  for (FieldId f : summary.written_fields) {
    out.written_fields.push_back(model.field_token(f));
  }
  for (ObjectId o : summary.embedded_constants) {
    out.embedded_constants.push_back(model.object(o).name);
  }
  std::sort(out.instantiated_types.begin(), out.instantiated_types.end());
  std::sort(out.read_fields.begin(), out.read_fields.end());
  std::sort(out.written_fields.begin(), out.written_fields.end());
  std::sort(out.embedded_constants.begin(), out.embedded_constants.end());
  return out;
}

namespace {

// Lookup helpers shared by the resolution paths. Each returns an invalid
// id on failure; the caller reports the failing token.
MethodId lookup_method(const ProgramModel& model, const std::string& token) {
  std::optional<MethodTokenParts> parts = split_method_token(token);
  if (!parts) return MethodId();
  TypeId owner = model.find_type(parts->owner);
  if (!owner.valid()) return MethodId();
  std::vector<TypeId> params;
  for (const std::string& p : parts->params) {
    TypeId t = model.find_type(p);
    if (!t.valid()) return MethodId();
    params.push_back(t);
  }
  return model.find_method(owner, parts->name, params);
}

FieldId lookup_field(const ProgramModel& model, const std::string& token) {
  std::optional<FieldTokenParts> parts = split_field_token(token);
  if (!parts) return FieldId();
  TypeId owner = model.find_type(parts->owner);
  if (!owner.valid()) return FieldId();
  return model.find_field(owner, parts->name);
}

}  // namespace

SummaryResolution resolve_summary(const SerializedSummary& serialized,
                                  const ProgramModel& model) {
  MethodSummary out;
  // Kind constraints mirror what the validator guarantees for bodies, so a
  // resolved summary is as safe to apply as an extracted one.
  auto method_with = [&](const std::string& token, auto pred,
                         std::set<MethodId>& into) {
    MethodId id = lookup_method(model, token);
    if (!id.valid() || !pred(model.method(id))) return false;
    into.insert(id);
    return true;
  };

  for (const std::string& t : serialized.static_invokes) {
    if (!method_with(
            t, [](const MethodDecl& m) { return m.is_static && !m.is_abstract; },
            out.static_invokes)) {
      return {std::nullopt, t};
    }
  }
  for (const std::string& t : serialized.virtual_invokes) {
    if (!method_with(t, [](const MethodDecl& m) { return !m.is_static; },
                     out.virtual_invokes)) {
      return {std::nullopt, t};
    }
  }
  for (const std::string& t : serialized.special_invokes) {
    if (!method_with(
            t,
            [](const MethodDecl& m) { return !m.is_static && !m.is_abstract; },
            out.special_invokes)) {
      return {std::nullopt, t};
    }
  }
  for (const std::string& t : serialized.instantiated_types) {
    TypeId id = model.find_type(t);
    if (!id.valid() || !model.type(id).is_concrete()) {
      return {std::nullopt, t};
    }
    out.instantiated_types.insert(id);
  }
  for (const std::string& t : serialized.read_fields) {
    FieldId id = lookup_field(model, t);
    if (!id.valid()) return {std::nullopt, t};
    out.read_fields.insert(id);
  }
  for (const std::string& t : serialized.written_fields) {
    FieldId id = lookup_field(model, t);
    if (!id.valid()) return {std::nullopt, t};
    out.written_fields.insert(id);
  }
  for (const std::string& t : serialized.embedded_constants) {
    ObjectId id = model.find_object(t);
    if (!id.valid()) return {std::nullopt, t};
    out.embedded_constants.insert(id);
  }
  return {std::move(out), ""};
}

MethodSummary get_summary(const ProgramModel& model, const MethodDecl& method,
                          const SummaryStore* store, bool* reused) {
  if (reused) *reused = false;
  if (store != nullptr) {
    const SerializedSummary* entry = store->find(model.method_token(method.id));
    if (entry != nullptr && entry->body_hash == method_hash(model, method)) {
      SummaryResolution res = resolve_summary(*entry, model);
      if (res.summary) {
        if (reused) *reused = true;
        return std::move(*res.summary);
      }
    }
  }
  return extract_summary(model, method);
}

SummaryStore SummaryStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StoreFormatError("cannot open '" + path + "'", 0);

  SummaryStore store;
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line) || line != kStoreHeader) {
    throw StoreFormatError("missing or unsupported header", 1);
  }
  ++line_no;

  std::optional<SerializedSummary> current;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string label, value;
    ls >> label;
    std::getline(ls, value);
    if (!value.empty() && value[0] == ' ') value.erase(0, 1);

    if (label == "method") {
      if (current) throw StoreFormatError("record not closed by 'end'", line_no);
      current.emplace();
      current->method_id = value;
    } else if (label == "end") {
      if (!current) throw StoreFormatError("'end' outside a record", line_no);
      if (current->body_hash.empty()) {
        throw StoreFormatError("record without hash", line_no);
      }
      store.insert(std::move(*current));
      current.reset();
    } else if (!current) {
      throw StoreFormatError("expected 'method', found '" + label + "'",
                             line_no);
    } else if (label == "hash") {
      current->body_hash = value;
    } else if (label == "static") {
      current->static_invokes.push_back(value);
    } else if (label == "virtual") {
      current->virtual_invokes.push_back(value);
    } else if (label == "special") {
      current->special_invokes.push_back(value);
    } else if (label == "instantiated") {
      current->instantiated_types.push_back(value);
    } else if (label == "read") {
      current->read_fields.push_back(value);
    } else if (label == "written") {
      current->written_fields.push_back(value);
    } else if (label == "constant") {
      current->embedded_constants.push_back(value);
    } else {
      throw StoreFormatError("unknown label '" + label + "'", line_no);
    }
  }
  if (current) throw StoreFormatError("unterminated record", line_no);
  return store;
}

void SummaryStore::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw StoreFormatError("cannot write '" + path + "'", 0);
  out << kStoreHeader << "\n";
  for (const auto& [id, s] : entries_) {
    out << "method " << id << "\n";
    out << "hash " << s.body_hash << "\n";
    for (const auto& t : s.static_invokes) out << "static " << t << "\n";
    for (const auto& t : s.virtual_invokes) out << "virtual " << t << "\n";
    for (const auto& t : s.special_invokes) out << "special " << t << "\n";
    for (const auto& t : s.instantiated_types) {
      out << "instantiated " << t << "\n";
    }
    for (const auto& t : s.read_fields) out << "read " << t << "\n";
    for (const auto& t : s.written_fields) out << "written " << t << "\n";
    for (const auto& t : s.embedded_constants) out << "constant " << t << "\n";
    out << "end\n";
  }
}

void emit_summary_store(const ProgramModel& model,
                        std::span<const MethodId> methods,
                        const std::string& path, const StoreOptions& options) {
  SummaryStore store;
  for (MethodId mid : methods) {
    const MethodDecl& m = model.method(mid);
    if (m.is_abstract) continue;
    MethodSummary summary = extract_summary(model, m);
    if (is_reusable(model, summary, m, options)) {
      store.insert(serialize_summary(model, summary, m, options));
    }
  }
  store.save(path);
}

}  // namespace reach
