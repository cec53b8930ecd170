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

#include "reach/model.hpp"

#include <algorithm>

namespace reach {

TypeId ProgramModel::find_type(std::string_view name) const {
  auto it = type_index.find(std::string(name));
  return it == type_index.end() ? TypeId() : it->second;
}

ObjectId ProgramModel::find_object(std::string_view name) const {
  auto it = object_index.find(std::string(name));
  return it == object_index.end() ? ObjectId() : it->second;
}

MethodId ProgramModel::find_method(TypeId owner, std::string_view name,
                                   std::span<const TypeId> params) const {
  if (!owner.valid()) return MethodId();
  for (MethodId mid : type(owner).methods) {
    const MethodDecl& m = method(mid);
    if (m.name == name && m.params.size() == params.size() &&
        std::equal(m.params.begin(), m.params.end(), params.begin())) {
      return mid;
    }
  }
  return MethodId();
}

FieldId ProgramModel::find_field(TypeId owner, std::string_view name) const {
  if (!owner.valid()) return FieldId();
  for (FieldId fid : type(owner).fields) {
    if (field(fid).name == name) return fid;
  }
  return FieldId();
}

std::string ProgramModel::signature_string(const MethodDecl& m) const {
  std::string out = "(";
  for (size_t i = 0; i < m.params.size(); ++i) {
    if (i > 0) out += ",";
    out += type(m.params[i]).name;
  }
  out += ")";
  return out;
}

std::string ProgramModel::method_token(MethodId id) const {
  const MethodDecl& m = method(id);
  return type(m.owner).name + "." + m.name + signature_string(m);
}

std::string ProgramModel::field_token(FieldId id) const {
  const FieldDecl& f = field(id);
  return type(f.owner).name + "." + f.name;
}

void ProgramModel::reindex() {
  type_index.clear();
  object_index.clear();
  for (const TypeDecl& t : types) type_index.emplace(t.name, t.id);
  for (const HeapObject& o : heap) object_index.emplace(o.name, o.id);
}

std::optional<LocalId> instruction_def(const Instruction& in) {
  return std::visit(
      [](const auto& i) -> std::optional<LocalId> {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, Alloc> ||
                      std::is_same_v<T, AllocArray> ||
                      std::is_same_v<T, LoadField> ||
                      std::is_same_v<T, LoadStatic> ||
                      std::is_same_v<T, ConstLoad>) {
          return i.dst;
        } else if constexpr (std::is_same_v<T, InvokeStatic> ||
                             std::is_same_v<T, InvokeVirtual> ||
                             std::is_same_v<T, InvokeSpecial>) {
          return i.dst;
        } else {
          return std::nullopt;
        }
      },
      in);
}

void append_instruction_uses(const Instruction& in, std::vector<LocalId>& out) {
  std::visit(
      [&out](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, InvokeStatic>) {
          out.insert(out.end(), i.args.begin(), i.args.end());
        } else if constexpr (std::is_same_v<T, InvokeVirtual> ||
                             std::is_same_v<T, InvokeSpecial>) {
          out.push_back(i.receiver);
          out.insert(out.end(), i.args.begin(), i.args.end());
        } else if constexpr (std::is_same_v<T, LoadField>) {
          out.push_back(i.object);
        } else if constexpr (std::is_same_v<T, StoreField>) {
          out.push_back(i.object);
          out.push_back(i.src);
        } else if constexpr (std::is_same_v<T, StoreStatic>) {
          out.push_back(i.src);
        } else if constexpr (std::is_same_v<T, Return>) {
          if (i.src) out.push_back(*i.src);
        }
      },
      in);
}

}  // namespace reach
