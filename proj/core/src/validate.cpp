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

#include "reach/validate.hpp"

#include <algorithm>
#include <set>

namespace reach {
namespace {

class Validator {
 public:
  explicit Validator(const ProgramModel& model) : m_(model) {}

  std::vector<Violation> run() {
    // Reference bounds first: the remaining checks dereference freely.
    check_bounds();
    if (!out_.empty()) return std::move(out_);

    check_names_unique();
    check_hierarchy_shape();
    check_hierarchy_acyclic();
    check_roots();
    check_members();
    check_bodies();
    check_heap();
    return std::move(out_);
  }

 private:
  void add(std::string rule, std::string element, std::string detail = "") {
    out_.push_back({std::move(rule), std::move(element), std::move(detail)});
  }

  bool type_ok(TypeId id) const { return id.index() < m_.types.size(); }
  bool method_ok(MethodId id) const { return id.index() < m_.methods.size(); }
  bool field_ok(FieldId id) const { return id.index() < m_.fields.size(); }
  bool object_ok(ObjectId id) const { return id.index() < m_.heap.size(); }

  void check_bounds() {
    auto bad = [&](const std::string& where, const std::string& what) {
      add("DanglingReference", where, what);
    };
    for (const TypeDecl& t : m_.types) {
      if (t.superclass && !type_ok(*t.superclass)) bad(t.name, "superclass");
      for (TypeId i : t.interfaces) {
        if (!type_ok(i)) bad(t.name, "interface");
      }
      if (t.element_type && !type_ok(*t.element_type)) {
        bad(t.name, "element type");
      }
      for (MethodId mid : t.methods) {
        if (!method_ok(mid)) bad(t.name, "method list entry");
      }
      for (FieldId fid : t.fields) {
        if (!field_ok(fid)) bad(t.name, "field list entry");
      }
      for (const auto& [f, o] : t.static_field_values) {
        if (!field_ok(f)) bad(t.name, "static value field");
        if (!object_ok(o)) bad(t.name, "static value object");
      }
    }
    for (const MethodDecl& m : m_.methods) {
      std::string where = m.name;
      if (!type_ok(m.owner)) {
        bad(where, "owner");
        continue;
      }
      for (TypeId p : m.params) {
        if (!type_ok(p)) bad(where, "parameter type");
      }
      if (m.return_type && !type_ok(*m.return_type)) bad(where, "return type");
      size_t locals = m.local_names.size();
      bool locals_ok = true;
      auto check_local = [&](LocalId l) {
        if (l.index() >= locals) locals_ok = false;
      };
      for (const Instruction& in : m.body) {
        if (auto d = instruction_def(in)) check_local(*d);
        uses_.clear();
        append_instruction_uses(in, uses_);
        for (LocalId u : uses_) check_local(u);
        std::visit(
            [&](const auto& i) {
              using T = std::decay_t<decltype(i)>;
              if constexpr (std::is_same_v<T, Alloc> ||
                            std::is_same_v<T, AllocArray>) {
                if (!type_ok(i.type)) bad(where, "allocated type");
              } else if constexpr (std::is_same_v<T, InvokeStatic>) {
                if (!method_ok(i.callee)) bad(where, "invoked method");
              } else if constexpr (std::is_same_v<T, InvokeVirtual>) {
                if (!method_ok(i.declared)) bad(where, "invoked method");
              } else if constexpr (std::is_same_v<T, InvokeSpecial>) {
                if (!method_ok(i.target)) bad(where, "invoked method");
              } else if constexpr (std::is_same_v<T, LoadField> ||
                                   std::is_same_v<T, StoreField> ||
                                   std::is_same_v<T, LoadStatic> ||
                                   std::is_same_v<T, StoreStatic>) {
                if (!field_ok(i.field)) bad(where, "accessed field");
              } else if constexpr (std::is_same_v<T, ConstLoad>) {
                if (!object_ok(i.object)) bad(where, "constant object");
              }
            },
            in);
      }
      if (!locals_ok) bad(where, "local slot out of range");
    }
    for (const FieldDecl& f : m_.fields) {
      if (!type_ok(f.owner)) bad(f.name, "owner");
      if (!type_ok(f.type)) bad(f.name, "field type");
    }
    for (const HeapObject& o : m_.heap) {
      if (!type_ok(o.type)) bad(o.name, "object type");
      for (const auto& [f, v] : o.field_values) {
        if (!field_ok(f)) bad(o.name, "field key");
        if (!object_ok(v)) bad(o.name, "field value");
      }
      for (ObjectId e : o.elements) {
        if (!object_ok(e)) bad(o.name, "array element");
      }
    }
    for (MethodId r : m_.roots) {
      if (!method_ok(r)) bad("<roots>", "root method");
    }
  }

  void check_names_unique() {
    std::set<std::string> type_names, object_names;
    for (const TypeDecl& t : m_.types) {
      if (!type_names.insert(t.name).second) {
        add("DuplicateTypeName", t.name);
      }
    }
    for (const HeapObject& o : m_.heap) {
      if (!object_names.insert(o.name).second) {
        add("DuplicateObjectName", o.name);
      }
    }
  }

  bool is_root_class(TypeId id) const {
    const TypeDecl& t = m_.type(id);
    return t.kind == TypeKind::kClass && !t.superclass;
  }

  void check_hierarchy_shape() {
    for (const TypeDecl& t : m_.types) {
      switch (t.kind) {
        case TypeKind::kClass:
          if (t.element_type) {
            add("ElementTypeOnNonArray", t.name);
          }
          break;
        case TypeKind::kInterface:
          if (t.superclass && !is_root_class(*t.superclass)) {
            add("InterfaceSuperclass", t.name,
                "interfaces may only extend a root class");
          }
          if (t.element_type) add("ElementTypeOnNonArray", t.name);
          for (TypeId i : t.interfaces) {
            if (m_.type(i).kind != TypeKind::kInterface) {
              add("InterfaceImplementsClass", t.name,
                  "superinterface " + m_.type(i).name + " is not an interface");
            }
          }
          break;
        case TypeKind::kArray:
          if (!t.element_type) {
            add("ArrayWithoutElementType", t.name);
          }
          if (!t.interfaces.empty()) {
            add("ArrayClauses", t.name, "arrays implement no interfaces");
          }
          if (t.superclass && !is_root_class(*t.superclass)) {
            add("ArrayClauses", t.name,
                "array supertype must be a root class");
          }
          if (!t.methods.empty() || !t.fields.empty()) {
            add("ArrayClauses", t.name, "arrays declare no members");
          }
          if (t.build_time_initialized) {
            add("InitOnArray", t.name);
          }
          break;
      }
      if (t.kind != TypeKind::kInterface) {
        for (TypeId i : t.interfaces) {
          if (m_.type(i).kind != TypeKind::kInterface) {
            add("ImplementsNonInterface", t.name,
                m_.type(i).name + " is not an interface");
          }
        }
      }
      if (t.superclass && t.kind == TypeKind::kClass &&
          m_.type(*t.superclass).kind != TypeKind::kClass) {
        add("ExtendsNonClass", t.name,
            m_.type(*t.superclass).name + " is not a class");
      }
    }
  }

  void check_hierarchy_acyclic() {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::vector<uint8_t> color(m_.types.size(), 0);
    for (const TypeDecl& root : m_.types) {
      if (color[root.id.index()] == 0) dfs(root.id, color);
    }
  }

  void dfs(TypeId id, std::vector<uint8_t>& color) {
    color[id.index()] = 1;
    const TypeDecl& t = m_.type(id);
    auto visit = [&](TypeId next) {
      if (color[next.index()] == 1) {
        add("CyclicHierarchy", t.name,
            "supertype cycle through " + m_.type(next).name);
      } else if (color[next.index()] == 0) {
        dfs(next, color);
      }
    };
    if (t.superclass) visit(*t.superclass);
    for (TypeId i : t.interfaces) visit(i);
    color[id.index()] = 2;
  }

  void check_roots() {
    for (MethodId r : m_.roots) {
      const MethodDecl& m = m_.method(r);
      if (m.is_abstract) {
        add("RootAbstract", m_.method_token(r));
      }
    }
  }

  void check_members() {
    for (const TypeDecl& t : m_.types) {
      std::set<std::string> method_sigs, field_names;
      for (MethodId mid : t.methods) {
        const MethodDecl& m = m_.method(mid);
        std::string sig = m.name + m_.signature_string(m);
        if (!method_sigs.insert(sig).second) {
          add("DuplicateMethod", t.name + "." + sig);
        }
        if (m.is_static && m.is_abstract) {
          add("StaticAbstract", m_.method_token(mid));
        }
        if (m.is_abstract && !m.body.empty()) {
          add("AbstractBody", m_.method_token(mid));
        }
        if (m.owner != t.id) {
          add("OwnerMismatch", m_.method_token(mid));
        }
      }
      for (FieldId fid : t.fields) {
        const FieldDecl& f = m_.field(fid);
        if (!field_names.insert(f.name).second) {
          add("DuplicateField", t.name + "." + f.name);
        }
        if (t.kind == TypeKind::kInterface && !f.is_static) {
          add("InterfaceInstanceField", t.name + "." + f.name);
        }
        if (f.owner != t.id) {
          add("OwnerMismatch", t.name + "." + f.name);
        }
      }
      if (!t.static_field_values.empty() && !t.build_time_initialized) {
        add("StaticValueWithoutInit", t.name,
            "static field values require 'init " + t.name + "'");
      }
      std::set<FieldId> assigned;
      for (const auto& [fid, oid] : t.static_field_values) {
        (void)oid;
        const FieldDecl& f = m_.field(fid);
        if (f.owner != t.id || !f.is_static) {
          add("StaticValueKey", t.name + "." + f.name,
              "value keys must be static fields declared on the type");
        }
        if (!assigned.insert(fid).second) {
          add("StaticValueKey", t.name + "." + f.name, "assigned twice");
        }
      }
    }
  }

  void check_bodies() {
    for (const MethodDecl& m : m_.methods) {
      if (m.is_abstract) continue;
      std::string where = m_.method_token(m.id);

      std::vector<bool> assigned(m.local_names.size(), false);
      for (uint32_t i = 0; i < m.param_slot_count() && i < assigned.size();
           ++i) {
        assigned[i] = true;
      }
      for (size_t idx = 0; idx < m.body.size(); ++idx) {
        const Instruction& in = m.body[idx];
        uses_.clear();
        append_instruction_uses(in, uses_);
        for (LocalId u : uses_) {
          if (!assigned[u.index()]) {
            add("UseBeforeDef", where,
                "local '" + m.local_names[u.index()] + "' (instruction " +
                    std::to_string(idx) + ")");
          }
        }
        if (auto d = instruction_def(in)) {
          if (assigned[d->index()]) {
            add("SingleAssignment", where,
                "local '" + m.local_names[d->index()] + "' assigned twice");
          }
          assigned[d->index()] = true;
        }

        std::visit(
            [&](const auto& i) {
              using T = std::decay_t<decltype(i)>;
              if constexpr (std::is_same_v<T, Alloc>) {
                const TypeDecl& t = m_.type(i.type);
                if (t.kind == TypeKind::kArray) {
                  add("AllocArrayViaNew", where, t.name);
                } else if (!t.is_concrete()) {
                  add("AllocAbstract", where, t.name);
                }
              } else if constexpr (std::is_same_v<T, AllocArray>) {
                if (m_.type(i.type).kind != TypeKind::kArray) {
                  add("AllocArrayNonArray", where, m_.type(i.type).name);
                }
              } else if constexpr (std::is_same_v<T, InvokeStatic>) {
                const MethodDecl& callee = m_.method(i.callee);
                if (!callee.is_static) {
                  add("StaticOnInstance", where, m_.method_token(i.callee));
                }
                if (i.args.size() != callee.params.size()) {
                  add("ArgumentCountMismatch", where,
                      m_.method_token(i.callee));
                }
              } else if constexpr (std::is_same_v<T, InvokeVirtual>) {
                const MethodDecl& callee = m_.method(i.declared);
                if (callee.is_static) {
                  add("VirtualOnStatic", where, m_.method_token(i.declared));
                }
                if (i.args.size() != callee.params.size()) {
                  add("ArgumentCountMismatch", where,
                      m_.method_token(i.declared));
                }
              } else if constexpr (std::is_same_v<T, InvokeSpecial>) {
                const MethodDecl& callee = m_.method(i.target);
                if (callee.is_static) {
                  add("SpecialOnStatic", where, m_.method_token(i.target));
                }
                if (callee.is_abstract) {
                  add("SpecialAbstractTarget", where,
                      m_.method_token(i.target));
                }
                if (i.args.size() != callee.params.size()) {
                  add("ArgumentCountMismatch", where,
                      m_.method_token(i.target));
                }
              }
            },
            in);
      }
    }
  }

  // Collects instance fields declared on `t` and its superclass chain.
  bool field_on_chain(TypeId t, FieldId f) const {
    std::optional<TypeId> cur = t;
    size_t guard = 0;
    while (cur && guard++ <= m_.types.size()) {
      const TypeDecl& decl = m_.type(*cur);
      for (FieldId fid : decl.fields) {
        if (fid == f) return true;
      }
      cur = decl.superclass;
    }
    return false;
  }

  void check_heap() {
    for (const HeapObject& o : m_.heap) {
      const TypeDecl& t = m_.type(o.type);
      std::string where = "object " + o.name;
      if (!t.is_concrete()) {
        add("HeapObjectAbstractType", where, t.name);
      }
      if (t.kind == TypeKind::kArray) {
        if (!o.field_values.empty()) {
          add("HeapFieldsOnArray", where);
        }
      } else if (!o.elements.empty()) {
        add("HeapElementsOnNonArray", where, t.name);
      }
      std::set<FieldId> seen;
      for (const auto& [fid, oid] : o.field_values) {
        (void)oid;
        const FieldDecl& f = m_.field(fid);
        if (f.is_static) {
          add("HeapFieldStatic", where, m_.field_token(fid));
        } else if (!field_on_chain(o.type, fid)) {
          add("HeapFieldNotDeclared", where, m_.field_token(fid));
        }
        if (!seen.insert(fid).second) {
          add("HeapFieldDuplicate", where, m_.field_token(fid));
        }
      }
    }
  }

  const ProgramModel& m_;
  std::vector<Violation> out_;
  std::vector<LocalId> uses_;
};

}  // namespace

std::vector<Violation> validate(const ProgramModel& model) {
  return Validator(model).run();
}

}  // namespace reach
