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

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "reach/ids.hpp"

namespace reach {

enum class TypeKind { kClass, kInterface, kArray };

struct FieldDecl {
  FieldId id;
  TypeId owner;
  std::string name;
  TypeId type;
  bool is_static = false;

  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

// Straight-line instruction set. Locals are method-scoped and
// single-assignment; parameter slots come pre-assigned (instance methods
// bind `this` as local 0, declared parameters follow).
struct Alloc {
  LocalId dst;
  TypeId type;
  friend bool operator==(const Alloc&, const Alloc&) = default;
};

struct AllocArray {
  LocalId dst;
  TypeId type;  // names an array type
  friend bool operator==(const AllocArray&, const AllocArray&) = default;
};

struct InvokeStatic {
  std::optional<LocalId> dst;
  MethodId callee;
  std::vector<LocalId> args;
  friend bool operator==(const InvokeStatic&, const InvokeStatic&) = default;
};

struct InvokeVirtual {
  std::optional<LocalId> dst;
  MethodId declared;  // resolved per receiver type during analysis
  LocalId receiver;
  std::vector<LocalId> args;
  friend bool operator==(const InvokeVirtual&, const InvokeVirtual&) = default;
};

struct InvokeSpecial {
  std::optional<LocalId> dst;
  MethodId target;  // unique call target, no dynamic dispatch
  LocalId receiver;
  std::vector<LocalId> args;
  friend bool operator==(const InvokeSpecial&, const InvokeSpecial&) = default;
};

struct LoadField {
  LocalId dst;
  LocalId object;
  FieldId field;
  friend bool operator==(const LoadField&, const LoadField&) = default;
};

struct StoreField {
  LocalId object;
  FieldId field;
  LocalId src;
  friend bool operator==(const StoreField&, const StoreField&) = default;
};

struct LoadStatic {
  LocalId dst;
  FieldId field;
  friend bool operator==(const LoadStatic&, const LoadStatic&) = default;
};

struct StoreStatic {
  FieldId field;
  LocalId src;
  friend bool operator==(const StoreStatic&, const StoreStatic&) = default;
};

struct ConstLoad {
  LocalId dst;
  ObjectId object;  // build-time heap object folded into the body
  friend bool operator==(const ConstLoad&, const ConstLoad&) = default;
};

struct Return {
  std::optional<LocalId> src;
  friend bool operator==(const Return&, const Return&) = default;
};

using Instruction =
    std::variant<Alloc, AllocArray, InvokeStatic, InvokeVirtual, InvokeSpecial,
                 LoadField, StoreField, LoadStatic, StoreStatic, ConstLoad,
                 Return>;

struct MethodDecl {
  MethodId id;
  TypeId owner;
  std::string name;
  std::vector<TypeId> params;
  std::optional<TypeId> return_type;  // nullopt = void
  bool is_static = false;
  bool is_abstract = false;
  std::vector<Instruction> body;  // empty for abstract methods
  // LocalId -> source-level name. Parameter slots first ("this" for
  // instance methods, then "p0".."pN"), body locals after.
  std::vector<std::string> local_names;

  // Number of locals that are pre-assigned on entry.
  uint32_t param_slot_count() const {
    return static_cast<uint32_t>(params.size()) + (is_static ? 0u : 1u);
  }

  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct TypeDecl {
  TypeId id;
  std::string name;
  TypeKind kind = TypeKind::kClass;
  bool is_abstract = false;  // classes only
  std::optional<TypeId> superclass;
  std::vector<TypeId> interfaces;         // declared order, duplicate-free
  std::optional<TypeId> element_type;     // arrays only
  std::vector<MethodId> methods;          // declared order
  std::vector<FieldId> fields;            // declared order
  // Static field -> heap object assignments, present only on
  // build-time-initialized types.
  std::vector<std::pair<FieldId, ObjectId>> static_field_values;
  bool build_time_initialized = false;

  bool is_concrete() const {
    return kind != TypeKind::kInterface && !is_abstract;
  }

  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct HeapObject {
  ObjectId id;
  std::string name;  // textual id used in the model file
  TypeId type;
  std::vector<std::pair<FieldId, ObjectId>> field_values;
  std::vector<ObjectId> elements;  // array objects only
  bool trivial = false;  // primitive / immutable fixed-structure marker

  friend bool operator==(const HeapObject&, const HeapObject&) = default;
};

// Per-method effect record: everything the analysis needs to know about a
// body without looking at it again.
struct MethodSummary {
  std::set<MethodId> static_invokes;
  std::set<MethodId> virtual_invokes;
  std::set<MethodId> special_invokes;
  std::set<TypeId> instantiated_types;
  std::set<FieldId> read_fields;
  std::set<FieldId> written_fields;
  std::set<ObjectId> embedded_constants;

  bool empty() const {
    return static_invokes.empty() && virtual_invokes.empty() &&
           special_invokes.empty() && instantiated_types.empty() &&
           read_fields.empty() && written_fields.empty() &&
           embedded_constants.empty();
  }

  friend bool operator==(const MethodSummary&, const MethodSummary&) = default;
};

// Closed world: every type, method, field and build-time heap object the
// analysis will ever see. Immutable once built; safe to share across
// threads without synchronization.
struct ProgramModel {
  std::vector<TypeDecl> types;
  std::vector<MethodDecl> methods;
  std::vector<FieldDecl> fields;
  std::vector<HeapObject> heap;
  std::vector<MethodId> roots;

  // Name indexes, rebuilt by reindex(); not part of model identity.
  std::unordered_map<std::string, TypeId> type_index;
  std::unordered_map<std::string, ObjectId> object_index;

  const TypeDecl& type(TypeId id) const { return types[id.index()]; }
  const MethodDecl& method(MethodId id) const { return methods[id.index()]; }
  const FieldDecl& field(FieldId id) const { return fields[id.index()]; }
  const HeapObject& object(ObjectId id) const { return heap[id.index()]; }

  TypeId find_type(std::string_view name) const;
  ObjectId find_object(std::string_view name) const;
  // Locates a member by iterating the owner's declared methods/fields.
  MethodId find_method(TypeId owner, std::string_view name,
                       std::span<const TypeId> params) const;
  FieldId find_field(TypeId owner, std::string_view name) const;

  // Canonical textual tokens: "Owner.name(P1,P2)" / "Owner.name".
  std::string method_token(MethodId id) const;
  std::string field_token(FieldId id) const;
  std::string signature_string(const MethodDecl& m) const;

  void reindex();

  friend bool operator==(const ProgramModel& a, const ProgramModel& b) {
    return a.types == b.types && a.methods == b.methods &&
           a.fields == b.fields && a.heap == b.heap && a.roots == b.roots;
  }
};

// Local defined by the instruction, if any.
std::optional<LocalId> instruction_def(const Instruction& in);

// Locals read by the instruction, in operand order.
void append_instruction_uses(const Instruction& in, std::vector<LocalId>& out);

}  // namespace reach
