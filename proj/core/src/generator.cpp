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

#include "reach/generator.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace reach {
namespace {

// mt19937_64 has a standard-defined sequence, so the same spec produces
// the same model on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint32_t below(uint32_t n) {
    return n == 0 ? 0 : static_cast<uint32_t>(gen_() % n);
  }
  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return gen_() % 1000000 < static_cast<uint64_t>(p * 1000000.0);
  }

 private:
  std::mt19937_64 gen_;
};

class Builder {
 public:
  explicit Builder(const CorpusSpec& spec) : spec_(spec), rng_(spec.seed) {}

  ProgramModel build() {
    plan_types();
    shape_hierarchy();
    declare_fields();
    declare_methods();
    declare_heap();
    assign_static_values();
    for (MethodId mid : concrete_methods_) emit_body(mid);
    m_.roots.push_back(main_method_);
    renumber_members();
    m_.reindex();
    return std::move(m_);
  }

  // Members were created in generation order (interleaved across types);
  // re-id them grouped by owner type so the model round-trips through its
  // textual form unchanged.
  void renumber_members() {
    std::vector<uint32_t> method_map(m_.methods.size());
    std::vector<MethodDecl> new_methods;
    new_methods.reserve(m_.methods.size());
    std::vector<uint32_t> field_map(m_.fields.size());
    std::vector<FieldDecl> new_fields;
    new_fields.reserve(m_.fields.size());

    for (TypeDecl& t : m_.types) {
      for (MethodId& mid : t.methods) {
        uint32_t idx = static_cast<uint32_t>(new_methods.size());
        method_map[mid.index()] = idx;
        new_methods.push_back(std::move(m_.methods[mid.index()]));
        new_methods.back().id = MethodId(idx);
        mid = MethodId(idx);
      }
      for (FieldId& fid : t.fields) {
        uint32_t idx = static_cast<uint32_t>(new_fields.size());
        field_map[fid.index()] = idx;
        new_fields.push_back(std::move(m_.fields[fid.index()]));
        new_fields.back().id = FieldId(idx);
        fid = FieldId(idx);
      }
      for (auto& [fid, oid] : t.static_field_values) {
        fid = FieldId(field_map[fid.index()]);
      }
    }
    m_.methods = std::move(new_methods);
    m_.fields = std::move(new_fields);

    for (HeapObject& o : m_.heap) {
      for (auto& [fid, oid] : o.field_values) {
        fid = FieldId(field_map[fid.index()]);
      }
    }
    for (MethodId& r : m_.roots) r = MethodId(method_map[r.index()]);
    for (MethodDecl& d : m_.methods) {
      for (Instruction& in : d.body) {
        std::visit(
            [&](auto& i) {
              using T = std::decay_t<decltype(i)>;
              if constexpr (std::is_same_v<T, InvokeStatic>) {
                i.callee = MethodId(method_map[i.callee.index()]);
              } else if constexpr (std::is_same_v<T, InvokeVirtual>) {
                i.declared = MethodId(method_map[i.declared.index()]);
              } else if constexpr (std::is_same_v<T, InvokeSpecial>) {
                i.target = MethodId(method_map[i.target.index()]);
              } else if constexpr (std::is_same_v<T, LoadField> ||
                                   std::is_same_v<T, StoreField> ||
                                   std::is_same_v<T, LoadStatic> ||
                                   std::is_same_v<T, StoreStatic>) {
                i.field = FieldId(field_map[i.field.index()]);
              }
            },
            in);
      }
    }
  }

 private:
  TypeId add_type(std::string name, TypeKind kind) {
    TypeId id(static_cast<uint32_t>(m_.types.size()));
    TypeDecl t;
    t.id = id;
    t.name = std::move(name);
    t.kind = kind;
    m_.types.push_back(std::move(t));
    return id;
  }

  MethodId add_method(TypeId owner, std::string name, std::vector<TypeId> params,
                      std::optional<TypeId> ret, bool is_static,
                      bool is_abstract) {
    MethodId id(static_cast<uint32_t>(m_.methods.size()));
    MethodDecl m;
    m.id = id;
    m.owner = owner;
    m.name = std::move(name);
    m.params = std::move(params);
    m.return_type = ret;
    m.is_static = is_static;
    m.is_abstract = is_abstract;
    m_.methods.push_back(std::move(m));
    m_.types[owner.index()].methods.push_back(id);
    if (!is_abstract) concrete_methods_.push_back(id);
    if (is_static) {
      static_methods_.push_back(id);
    } else {
      virtual_targets_.push_back(id);
      if (m_.types[owner.index()].kind == TypeKind::kInterface) {
        interface_methods_.push_back(id);
      }
      if (!is_abstract) special_targets_.push_back(id);
    }
    return id;
  }

  FieldId add_field(TypeId owner, std::string name, TypeId type,
                    bool is_static) {
    FieldId id(static_cast<uint32_t>(m_.fields.size()));
    FieldDecl f;
    f.id = id;
    f.owner = owner;
    f.name = std::move(name);
    f.type = type;
    f.is_static = is_static;
    m_.fields.push_back(std::move(f));
    m_.types[owner.index()].fields.push_back(id);
    if (is_static) {
      static_fields_.push_back(id);
    } else {
      instance_fields_.push_back(id);
    }
    return id;
  }

  TypeId random_type() {
    return TypeId(rng_.below(static_cast<uint32_t>(m_.types.size())));
  }
  TypeId random_concrete_class() {
    return concrete_classes_[rng_.below(
        static_cast<uint32_t>(concrete_classes_.size()))];
  }

  void plan_types() {
    uint32_t total = std::max<uint32_t>(1, spec_.type_count);
    uint32_t iface_count =
        total <= 2 ? 0
                   : std::min<uint32_t>(
                         total - 2, static_cast<uint32_t>(
                                        spec_.interface_density * total + 0.5));
    uint32_t array_count = (spec_.heap_object_count > 0 && total >= 6) ? 1 : 0;
    uint32_t class_count = total - iface_count - array_count;

    for (uint32_t i = 0; i < class_count; ++i) {
      std::string name = i == 0                ? (class_count == 1 ? "Main" : "Obj")
                         : i == class_count - 1 ? "Main"
                                                : "C" + std::to_string(i);
      classes_.push_back(add_type(std::move(name), TypeKind::kClass));
    }
    for (uint32_t i = 0; i < iface_count; ++i) {
      interfaces_.push_back(add_type("I" + std::to_string(i),
                                     TypeKind::kInterface));
    }
    for (uint32_t i = 0; i < array_count; ++i) {
      arrays_.push_back(add_type("Arr" + std::to_string(i), TypeKind::kArray));
    }
    main_class_ = classes_.back();
  }

  void shape_hierarchy() {
    class_depth_.assign(m_.types.size(), 0);
    for (size_t i = 1; i < classes_.size(); ++i) {
      TypeId cls = classes_[i];
      // Candidates: already-shaped classes below the depth cap. Biased
      // toward the deepest one to get long chains.
      std::vector<TypeId> candidates;
      for (size_t j = 0; j < i; ++j) {
        if (class_depth_[classes_[j].index()] + 1 <=
            spec_.max_hierarchy_depth) {
          candidates.push_back(classes_[j]);
        }
      }
      TypeId super = classes_[0];
      if (!candidates.empty()) {
        if (rng_.chance(0.5)) {
          super = *std::max_element(candidates.begin(), candidates.end(),
                                    [&](TypeId a, TypeId b) {
                                      return class_depth_[a.index()] <
                                             class_depth_[b.index()];
                                    });
        } else {
          super = candidates[rng_.below(
              static_cast<uint32_t>(candidates.size()))];
        }
      }
      m_.types[cls.index()].superclass = super;
      class_depth_[cls.index()] = class_depth_[super.index()] + 1;

      if (cls != main_class_ && rng_.chance(0.15)) {
        m_.types[cls.index()].is_abstract = true;
      }
      if (!interfaces_.empty() && rng_.chance(0.6)) {
        uint32_t n = 1 + rng_.below(2);
        for (uint32_t k = 0; k < n; ++k) {
          TypeId iface =
              interfaces_[rng_.below(static_cast<uint32_t>(interfaces_.size()))];
          auto& list = m_.types[cls.index()].interfaces;
          if (std::find(list.begin(), list.end(), iface) == list.end()) {
            list.push_back(iface);
          }
        }
      }
    }
    for (size_t i = 1; i < interfaces_.size(); ++i) {
      if (rng_.chance(0.4)) {
        TypeId super = interfaces_[rng_.below(static_cast<uint32_t>(i))];
        m_.types[interfaces_[i].index()].interfaces.push_back(super);
      }
    }
    for (TypeId arr : arrays_) {
      m_.types[arr.index()].superclass = classes_[0];
      m_.types[arr.index()].element_type = random_type();
    }
    for (TypeId cls : classes_) {
      if (!m_.types[cls.index()].is_abstract) {
        concrete_classes_.push_back(cls);
      }
    }
  }

  void declare_fields() {
    uint32_t target = static_cast<uint32_t>(spec_.field_density *
                                                static_cast<double>(
                                                    classes_.size()) +
                                            0.5);
    for (uint32_t k = 0; k < target; ++k) {
      TypeId owner = classes_[rng_.below(static_cast<uint32_t>(classes_.size()))];
      add_field(owner, "f" + std::to_string(k), random_type(),
                rng_.chance(0.3));
    }
  }

  std::vector<TypeId> random_params() {
    std::vector<TypeId> params;
    uint32_t n = rng_.below(3);
    for (uint32_t i = 0; i < n; ++i) params.push_back(random_type());
    return params;
  }

  std::optional<TypeId> random_return() {
    return rng_.chance(0.5) ? std::optional<TypeId>(random_type())
                            : std::nullopt;
  }

  void declare_methods() {
    uint32_t name_counter = 0;
    auto fresh = [&] { return "m" + std::to_string(name_counter++); };

    main_method_ = add_method(main_class_, "main", {}, std::nullopt,
                              /*is_static=*/true, /*is_abstract=*/false);

    for (TypeId iface : interfaces_) {
      uint32_t n = 1 + rng_.below(2);
      for (uint32_t k = 0; k < n; ++k) {
        bool has_default = rng_.chance(0.25);
        add_method(iface, fresh(), random_params(), random_return(),
                   /*is_static=*/false, /*is_abstract=*/!has_default);
      }
    }

    // Interface implementations on classes.
    for (TypeId cls : classes_) {
      for (TypeId iface : m_.types[cls.index()].interfaces) {
        for (MethodId im : std::vector<MethodId>(
                 m_.types[iface.index()].methods)) {
          if (!rng_.chance(0.55)) continue;
          const MethodDecl& proto = m_.method(im);
          if (m_.find_method(cls, proto.name, proto.params).valid()) continue;
          add_method(cls, proto.name, proto.params, proto.return_type,
                     /*is_static=*/false, /*is_abstract=*/false);
        }
      }
    }

    // Plain class methods, occasionally overriding a superclass method.
    while (m_.methods.size() < spec_.method_count) {
      TypeId owner = classes_[rng_.below(static_cast<uint32_t>(classes_.size()))];
      if (rng_.chance(0.2)) {
        std::vector<MethodId> inherited;
        std::optional<TypeId> cur = m_.types[owner.index()].superclass;
        while (cur) {
          for (MethodId mid : m_.types[cur->index()].methods) {
            if (!m_.method(mid).is_static) inherited.push_back(mid);
          }
          cur = m_.types[cur->index()].superclass;
        }
        if (!inherited.empty()) {
          const MethodDecl& proto = m_.method(
              inherited[rng_.below(static_cast<uint32_t>(inherited.size()))]);
          if (!m_.find_method(owner, proto.name, proto.params).valid()) {
            add_method(owner, proto.name, proto.params, proto.return_type,
                       /*is_static=*/false, /*is_abstract=*/false);
            continue;
          }
        }
      }
      add_method(owner, fresh(), random_params(), random_return(),
                 rng_.chance(0.35), /*is_abstract=*/false);
    }
  }

  void declare_heap() {
    for (uint32_t k = 0; k < spec_.heap_object_count; ++k) {
      ObjectId id(static_cast<uint32_t>(m_.heap.size()));
      HeapObject o;
      o.id = id;
      o.name = "o" + std::to_string(k);
      o.type = (!arrays_.empty() && rng_.chance(0.2))
                   ? arrays_[rng_.below(static_cast<uint32_t>(arrays_.size()))]
                   : random_concrete_class();
      m_.heap.push_back(std::move(o));
    }
    uint32_t count = static_cast<uint32_t>(m_.heap.size());
    for (HeapObject& o : m_.heap) {
      const TypeDecl& t = m_.type(o.type);
      if (t.kind == TypeKind::kArray) {
        uint32_t n = rng_.below(4);
        for (uint32_t e = 0; e < n; ++e) {
          o.elements.push_back(ObjectId(rng_.below(count)));
        }
      } else {
        std::optional<TypeId> cur = o.type;
        while (cur) {
          for (FieldId fid : m_.type(*cur).fields) {
            if (!m_.field(fid).is_static && rng_.chance(0.5)) {
              o.field_values.emplace_back(fid, ObjectId(rng_.below(count)));
            }
          }
          cur = m_.type(*cur).superclass;
        }
      }
      bool leaf = o.field_values.empty() && o.elements.empty();
      o.trivial = rng_.chance(leaf ? 0.6 : 0.15);
    }
  }

  void assign_static_values() {
    if (m_.heap.empty()) return;
    uint32_t count = static_cast<uint32_t>(m_.heap.size());
    for (TypeId cls : classes_) {
      TypeDecl& t = m_.types[cls.index()];
      bool has_static = false;
      for (FieldId fid : t.fields) has_static |= m_.field(fid).is_static;
      if (!has_static || !rng_.chance(0.5)) continue;
      t.build_time_initialized = true;
      for (FieldId fid : t.fields) {
        if (m_.field(fid).is_static && rng_.chance(0.7)) {
          t.static_field_values.emplace_back(fid, ObjectId(rng_.below(count)));
        }
      }
    }
  }

  // --- body generation -----------------------------------------------------

  struct BodyCtx {
    MethodDecl* m;
    std::vector<LocalId> available;
    // Locals whose static type is known; receivers and arguments are
    // preferably drawn from here so that calls see compatible values.
    std::vector<std::pair<LocalId, TypeId>> typed;
    uint32_t next_local = 0;

    LocalId fresh() {
      LocalId id(static_cast<uint32_t>(m->local_names.size()));
      m->local_names.push_back("v" + std::to_string(next_local++));
      return id;
    }
    void define(LocalId id) { available.push_back(id); }
    void define_typed(LocalId id, TypeId type) {
      available.push_back(id);
      typed.emplace_back(id, type);
    }
  };

  LocalId any_local(BodyCtx& ctx) {
    return ctx.available[rng_.below(
        static_cast<uint32_t>(ctx.available.size()))];
  }

  // Reflexive supertype closure (classes and interfaces), memoized.
  const std::vector<TypeId>& supers_of(TypeId t) {
    std::vector<TypeId>& memo = supers_memo_[t.index()];
    if (!memo.empty()) return memo;
    std::vector<TypeId> work{t};
    while (!work.empty()) {
      TypeId cur = work.back();
      work.pop_back();
      if (std::find(memo.begin(), memo.end(), cur) != memo.end()) continue;
      memo.push_back(cur);
      const TypeDecl& decl = m_.type(cur);
      if (decl.superclass) work.push_back(*decl.superclass);
      for (TypeId i : decl.interfaces) work.push_back(i);
    }
    return memo;
  }

  bool gen_is_subtype(TypeId sub, TypeId sup) {
    const std::vector<TypeId>& s = supers_of(sub);
    return std::find(s.begin(), s.end(), sup) != s.end();
  }

  // A local whose static type is a subtype of `want`, if any.
  std::optional<LocalId> compatible_local(BodyCtx& ctx, TypeId want) {
    std::vector<LocalId> fits;
    for (const auto& [local, type] : ctx.typed) {
      if (gen_is_subtype(type, want)) fits.push_back(local);
    }
    if (fits.empty()) return std::nullopt;
    return fits[rng_.below(static_cast<uint32_t>(fits.size()))];
  }

  void emit_alloc(BodyCtx& ctx) {
    LocalId dst = ctx.fresh();
    if (!arrays_.empty() && rng_.chance(0.12)) {
      TypeId arr = arrays_[rng_.below(static_cast<uint32_t>(arrays_.size()))];
      ctx.m->body.push_back(AllocArray{dst, arr});
      ctx.define_typed(dst, arr);
    } else {
      // Prefer implementors of some interface so that dispatch has fuel.
      TypeId t = random_concrete_class();
      if (rng_.chance(0.5)) {
        for (int attempt = 0; attempt < 3; ++attempt) {
          TypeId cand = random_concrete_class();
          if (!m_.type(cand).interfaces.empty()) {
            t = cand;
            break;
          }
        }
      }
      ctx.m->body.push_back(Alloc{dst, t});
      ctx.define_typed(dst, t);
    }
  }

  void emit_const(BodyCtx& ctx) {
    LocalId dst = ctx.fresh();
    ObjectId obj(rng_.below(static_cast<uint32_t>(m_.heap.size())));
    ctx.m->body.push_back(ConstLoad{dst, obj});
    ctx.define_typed(dst, m_.object(obj).type);
  }

  // Receiver-driven call generation: pick a typed local first, then a
  // method callable on its static type. Keeps receivers compatible, which
  // both engines need to see comparable programs.
  void emit_call(BodyCtx& ctx) {
    double roll = rng_.below(100) / 100.0;
    std::optional<LocalId> dst;
    auto args_for = [&](const MethodDecl& callee) {
      std::vector<LocalId> args;
      for (TypeId p : callee.params) {
        std::optional<LocalId> fit = compatible_local(ctx, p);
        args.push_back(fit ? *fit : any_local(ctx));
      }
      return args;
    };
    auto finish_dst = [&](const MethodDecl& callee) -> std::optional<LocalId> {
      if (!rng_.chance(0.3)) return std::nullopt;
      LocalId d = ctx.fresh();
      if (callee.return_type) {
        ctx.define_typed(d, *callee.return_type);
      } else {
        ctx.define(d);
      }
      return d;
    };

    if (roll < 0.70 && !ctx.typed.empty()) {
      // Instance call on a receiver we actually have.
      const auto& [recv, recv_type] =
          ctx.typed[rng_.below(static_cast<uint32_t>(ctx.typed.size()))];
      std::vector<MethodId> callable;
      std::vector<MethodId> iface_callable;
      for (TypeId u : supers_of(recv_type)) {
        for (MethodId mid : m_.type(u).methods) {
          const MethodDecl& d = m_.method(mid);
          if (d.is_static) continue;
          callable.push_back(mid);
          if (m_.type(u).kind == TypeKind::kInterface) {
            iface_callable.push_back(mid);
          }
        }
      }
      if (!callable.empty()) {
        bool prefer_iface = !iface_callable.empty() && rng_.chance(0.6);
        const std::vector<MethodId>& pool =
            prefer_iface ? iface_callable : callable;
        MethodId declared =
            pool[rng_.below(static_cast<uint32_t>(pool.size()))];
        const MethodDecl& callee = m_.method(declared);
        bool special = !callee.is_abstract && rng_.chance(0.2);
        std::vector<LocalId> args = args_for(callee);
        dst = finish_dst(callee);
        if (special) {
          ctx.m->body.push_back(InvokeSpecial{dst, declared, recv, args});
        } else {
          ctx.m->body.push_back(InvokeVirtual{dst, declared, recv, args});
        }
        return;
      }
    }
    if (!static_methods_.empty()) {
      (void)roll;
      MethodId callee = static_methods_[rng_.below(
          static_cast<uint32_t>(static_methods_.size()))];
      std::vector<LocalId> args = args_for(m_.method(callee));
      dst = finish_dst(m_.method(callee));
      ctx.m->body.push_back(InvokeStatic{dst, callee, args});
    }
  }

  void emit_field_op(BodyCtx& ctx) {
    bool use_static = !static_fields_.empty() &&
                      (instance_fields_.empty() || rng_.chance(0.4));
    if (use_static) {
      FieldId f = static_fields_[rng_.below(
          static_cast<uint32_t>(static_fields_.size()))];
      if (rng_.chance(0.5)) {
        LocalId dst = ctx.fresh();
        ctx.m->body.push_back(LoadStatic{dst, f});
        ctx.define_typed(dst, m_.field(f).type);
      } else {
        std::optional<LocalId> fit = compatible_local(ctx, m_.field(f).type);
        ctx.m->body.push_back(StoreStatic{f, fit ? *fit : any_local(ctx)});
      }
    } else if (!instance_fields_.empty()) {
      FieldId f = instance_fields_[rng_.below(
          static_cast<uint32_t>(instance_fields_.size()))];
      std::optional<LocalId> base =
          compatible_local(ctx, m_.field(f).owner);
      LocalId obj = base ? *base : any_local(ctx);
      if (rng_.chance(0.5)) {
        LocalId dst = ctx.fresh();
        ctx.m->body.push_back(LoadField{dst, obj, f});
        ctx.define_typed(dst, m_.field(f).type);
      } else {
        std::optional<LocalId> fit = compatible_local(ctx, m_.field(f).type);
        ctx.m->body.push_back(
            StoreField{obj, f, fit ? *fit : any_local(ctx)});
      }
    }
  }

  void emit_body(MethodId mid) {
    MethodDecl& m = m_.methods[mid.index()];
    BodyCtx ctx;
    ctx.m = &m;
    uint32_t slot = 0;
    if (!m.is_static) {
      m.local_names.push_back("this");
      ctx.define_typed(LocalId(slot++), m.owner);
    }
    for (size_t i = 0; i < m.params.size(); ++i) {
      m.local_names.push_back("p" + std::to_string(i));
      ctx.define_typed(LocalId(slot++), m.params[i]);
    }

    bool is_main = mid == main_method_;
    uint32_t allocs = is_main ? 2 + rng_.below(3) : 1 + (rng_.chance(0.4) ? 1 : 0);
    for (uint32_t i = 0; i < allocs; ++i) emit_alloc(ctx);
    if (!m_.heap.empty() && rng_.chance(is_main ? 0.5 : 0.25)) emit_const(ctx);

    double cd = spec_.call_density;
    uint32_t calls = static_cast<uint32_t>(cd) +
                     (rng_.chance(cd - static_cast<uint32_t>(cd)) ? 1 : 0);
    if (is_main) calls += 2 + rng_.below(3);
    for (uint32_t i = 0; i < calls; ++i) emit_call(ctx);

    if (rng_.chance(std::min(1.0, spec_.field_density * 0.4))) {
      emit_field_op(ctx);
    }

    if (m.return_type && rng_.chance(0.5)) {
      m.body.push_back(Return{any_local(ctx)});
    } else {
      m.body.push_back(Return{std::nullopt});
    }
  }

  const CorpusSpec& spec_;
  Rng rng_;
  ProgramModel m_;

  std::vector<TypeId> classes_;
  std::vector<TypeId> concrete_classes_;
  std::vector<TypeId> interfaces_;
  std::vector<TypeId> arrays_;
  std::vector<uint32_t> class_depth_;
  std::vector<std::vector<TypeId>> supers_memo_;

  std::vector<MethodId> concrete_methods_;
  std::vector<MethodId> static_methods_;
  std::vector<MethodId> virtual_targets_;    // any non-static declaration
  std::vector<MethodId> interface_methods_;  // non-static, on interfaces
  std::vector<MethodId> special_targets_;    // non-static and non-abstract
  std::vector<FieldId> static_fields_;
  std::vector<FieldId> instance_fields_;

  TypeId main_class_;
  MethodId main_method_;
};

}  // namespace

ProgramModel generate_model(const CorpusSpec& spec) {
  return Builder(spec).build();
}

}  // namespace reach
