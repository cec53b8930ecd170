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

#include "reach/summary.hpp"

namespace reach {

MethodSummary extract_summary(const ProgramModel& model,
                              const MethodDecl& method) {
  if (method.is_abstract) {
    throw NoBodyError(model.method_token(method.id));
  }
  MethodSummary s;
  for (const Instruction& in : method.body) {
    std::visit(
        [&](const auto& i) {
          using T = std::decay_t<decltype(i)>;
          if constexpr (std::is_same_v<T, Alloc> ||
                        std::is_same_v<T, AllocArray>) {
            s.instantiated_types.insert(i.type);
          } else if constexpr (std::is_same_v<T, InvokeStatic>) {
            s.static_invokes.insert(i.callee);
          } else if constexpr (std::is_same_v<T, InvokeVirtual>) {
            s.virtual_invokes.insert(i.declared);
          } else if constexpr (std::is_same_v<T, InvokeSpecial>) {
            s.special_invokes.insert(i.target);
          } else if constexpr (std::is_same_v<T, LoadField> ||
                               std::is_same_v<T, LoadStatic>) {
            s.read_fields.insert(i.field);
          } else if constexpr (std::is_same_v<T, StoreField> ||
                               std::is_same_v<T, StoreStatic>) {
            s.written_fields.insert(i.field);
          } else if constexpr (std::is_same_v<T, ConstLoad>) {
            s.embedded_constants.insert(i.object);
          }
          // Return contributes to no collection.
        },
        in);
  }
  return s;
}

}  // namespace reach
