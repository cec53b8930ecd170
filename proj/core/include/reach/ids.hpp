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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace reach {

inline constexpr uint32_t kInvalidIndex = 0xffffffffu;

// Dense index into one of the ProgramModel tables. The tag keeps ids of
// different element kinds from mixing at compile time.
template <typename Tag>
class Id {
 public:
  constexpr Id() = default;
  constexpr explicit Id(uint32_t index) : index_(index) {}

  constexpr uint32_t index() const { return index_; }
  constexpr bool valid() const { return index_ != kInvalidIndex; }

  friend constexpr auto operator<=>(Id, Id) = default;

 private:
  uint32_t index_ = kInvalidIndex;
};

struct TypeIdTag {};
struct MethodIdTag {};
struct FieldIdTag {};
struct ObjectIdTag {};
struct LocalIdTag {};

using TypeId = Id<TypeIdTag>;
using MethodId = Id<MethodIdTag>;
using FieldId = Id<FieldIdTag>;
using ObjectId = Id<ObjectIdTag>;
using LocalId = Id<LocalIdTag>;

}  // namespace reach

template <typename Tag>
struct std::hash<reach::Id<Tag>> {
  size_t operator()(reach::Id<Tag> id) const noexcept {
    return std::hash<uint32_t>{}(id.index());
  }
};
