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

#include "reach/pta.hpp"

#include <algorithm>
#include <chrono>
#include <deque>

#include "reach/heap_scanner.hpp"
#include "reach/hierarchy.hpp"

namespace reach {
namespace {

using Node = TypeFlowGraph::Node;
using NodeKind = TypeFlowGraph::NodeKind;
using InvokeKind = TypeFlowGraph::InvokeKind;
using Site = TypeFlowGraph::InvocationSite;

class PtaEngine {
 public:
  PtaEngine(const ProgramModel& model, const Hierarchy& hier,
            const AnalysisConfig& config)
      : model_(model),
        hier_(hier),
        config_(config),
        state_(model),
        scanner_(model,
                 HeapScanHooks{
                     [this](TypeId t, ObjectId via) {
                       if (mark(state_.instantiated_flag(t))) {
                         type_prov_[t.index()] =
                             "heap object " + model_.object(via).name;
                       }
                     },
                     [this](FieldId f, ObjectId value) {
                       ensure_field_nodes(f);
                       add_type(g_.field_store_node[f.index()],
                                model_.object(value).type);
                     },
                     [this](FieldId f) { return state_.is_read(f); },
                 }),
        method_prov_(model.methods.size()),
        type_prov_(model.types.size()) {
    g_.methods.resize(model.methods.size());
    g_.field_store_node.assign(model.fields.size(), kInvalidIndex);
    g_.field_load_node.assign(model.fields.size(), kInvalidIndex);
  }

  void run() {
    for (MethodId root : model_.roots) make_reachable(root, "root");
    process();
  }

  AnalysisResult finish(double seconds) {
    AnalysisResult r = assemble_result_sets(model_, state_,
                                            scanner_.image_heap_sorted());
    r.no_target_resolutions = no_target_;
    r.ambiguous_resolutions = ambiguous_;
    r.method_provenance = std::move(method_prov_);
    r.type_provenance = std::move(type_prov_);
    r.analysis_seconds = seconds;
    return r;
  }

  TypeFlowGraph take_graph() { return std::move(g_); }

 private:
  // --- graph construction -------------------------------------------------

  uint32_t new_node(NodeKind kind, TypeId declared, MethodId method,
                    uint32_t aux = kInvalidIndex,
                    uint32_t aux2 = kInvalidIndex) {
    uint32_t id = static_cast<uint32_t>(g_.nodes.size());
    g_.nodes.push_back(Node{kind, declared, method, aux, aux2, {}, {}});
    if (method.valid()) g_.methods[method.index()].nodes.push_back(id);
    return id;
  }

  void ensure_field_nodes(FieldId f) {
    if (g_.field_store_node[f.index()] != kInvalidIndex) return;
    TypeId ft = model_.field(f).type;
    uint32_t store = new_node(NodeKind::kFieldStore, ft, MethodId(), f.index());
    uint32_t load = new_node(NodeKind::kFieldLoad, ft, MethodId(), f.index());
    g_.field_store_node[f.index()] = store;
    g_.field_load_node[f.index()] = load;
    add_edge(store, load);
  }

  void add_edge(uint32_t from, uint32_t to) {
    g_.nodes[from].out_edges.push_back(to);
    for (TypeId t : std::vector<TypeId>(g_.nodes[from].types)) {
      add_type(to, t);
    }
  }

  void add_type(uint32_t node, TypeId t) {
    Node& n = g_.nodes[node];
    if (n.declared.valid() && !hier_.is_subtype(t, n.declared)) return;
    auto it = std::lower_bound(n.types.begin(), n.types.end(), t);
    if (it != n.types.end() && *it == t) return;
    n.types.insert(it, t);
    flow_queue_.emplace_back(node, t);
  }

  void make_reachable(MethodId m, std::string why) {
    if (mark(state_.invoked_flag(m))) {
      method_prov_[m.index()] = std::move(why);
      build_queue_.push_back(m);
    }
  }

  void register_instantiated(TypeId t, MethodId in) {
    if (mark(state_.instantiated_flag(t))) {
      type_prov_[t.index()] = "allocated in " + model_.method_token(in);
    }
  }

  void register_field_read(FieldId f) {
    ensure_field_nodes(f);
    if (mark(state_.read_flag(f))) scanner_.on_field_read(f);
  }

  void build_method(MethodId mid) {
    const MethodDecl& m = model_.method(mid);
    TypeFlowGraph::MethodFlow& mf = g_.methods[mid.index()];
    mf.built = true;

    std::vector<uint32_t> local_node(m.local_names.size(), kInvalidIndex);
    uint32_t slot = 0;
    if (!m.is_static) {
      uint32_t n = new_node(NodeKind::kFormal, m.owner, mid, slot, slot);
      mf.formals.push_back(n);
      local_node[slot++] = n;
    }
    for (TypeId p : m.params) {
      uint32_t n = new_node(NodeKind::kFormal, p, mid, slot, slot);
      mf.formals.push_back(n);
      local_node[slot++] = n;
    }
    if (m.return_type) {
      mf.return_node = new_node(NodeKind::kReturn, *m.return_type, mid);
    }

    for (const Instruction& in : m.body) {
      std::visit(
          [&](const auto& i) {
            using T = std::decay_t<decltype(i)>;
            if constexpr (std::is_same_v<T, Alloc> ||
                          std::is_same_v<T, AllocArray>) {
              uint32_t n = new_node(NodeKind::kAlloc, i.type, mid,
                                    i.type.index(), i.dst.index());
              local_node[i.dst.index()] = n;
              register_instantiated(i.type, mid);
              add_type(n, i.type);
            } else if constexpr (std::is_same_v<T, ConstLoad>) {
              TypeId ct = model_.object(i.object).type;
              uint32_t n = new_node(NodeKind::kConstant, ct, mid,
                                    i.object.index(), i.dst.index());
              local_node[i.dst.index()] = n;
              add_type(n, ct);
              scanner_.scan_root(i.object);
            } else if constexpr (std::is_same_v<T, InvokeStatic>) {
              build_site(mid, InvokeKind::kStatic, i.callee, kInvalidIndex,
                         i.args, i.dst, local_node);
            } else if constexpr (std::is_same_v<T, InvokeVirtual>) {
              mark(state_.virtual_invoked_flag(i.declared));
              build_site(mid, InvokeKind::kVirtual, i.declared,
                         local_node[i.receiver.index()], i.args, i.dst,
                         local_node);
            } else if constexpr (std::is_same_v<T, InvokeSpecial>) {
              mark(state_.special_invoked_flag(i.target));
              if (config_.distinguish_special_invokes) {
                build_site(mid, InvokeKind::kSpecial, i.target,
                           local_node[i.receiver.index()], i.args, i.dst,
                           local_node);
              } else {
                // Collapsed mode: link like a direct call.
                build_site(mid, InvokeKind::kStatic, i.target,
                           local_node[i.receiver.index()], i.args, i.dst,
                           local_node);
              }
            } else if constexpr (std::is_same_v<T, LoadField>) {
              register_field_read(i.field);
              local_node[i.dst.index()] = g_.field_load_node[i.field.index()];
            } else if constexpr (std::is_same_v<T, StoreField>) {
              ensure_field_nodes(i.field);
              mark(state_.written_flag(i.field));
              add_edge(local_node[i.src.index()],
                       g_.field_store_node[i.field.index()]);
            } else if constexpr (std::is_same_v<T, LoadStatic>) {
              register_field_read(i.field);
              local_node[i.dst.index()] = g_.field_load_node[i.field.index()];
            } else if constexpr (std::is_same_v<T, StoreStatic>) {
              ensure_field_nodes(i.field);
              mark(state_.written_flag(i.field));
              add_edge(local_node[i.src.index()],
                       g_.field_store_node[i.field.index()]);
            } else if constexpr (std::is_same_v<T, Return>) {
              if (i.src && mf.return_node != kInvalidIndex) {
                add_edge(local_node[i.src->index()], mf.return_node);
              }
            }
          },
          in);
    }
  }

  void build_site(MethodId caller, InvokeKind kind, MethodId declared,
                  uint32_t receiver_source, const std::vector<LocalId>& args,
                  std::optional<LocalId> dst,
                  std::vector<uint32_t>& local_node) {
    uint32_t site_id = static_cast<uint32_t>(g_.sites.size());
    g_.sites.push_back({});
    Site& site = g_.sites.back();
    site.kind = kind;
    site.declared = declared;
    site.caller = caller;
    site.receiver_source = receiver_source;
    for (LocalId a : args) site.arg_sources.push_back(local_node[a.index()]);
    if (dst) {
      const MethodDecl& d = model_.method(declared);
      TypeId result_type = d.return_type ? *d.return_type : TypeId();
      site.result_node = new_node(NodeKind::kInvocationResult, result_type,
                                  caller, site_id, dst->index());
      local_node[dst->index()] = site.result_node;
    }
    g_.methods[caller.index()].sites.push_back(site_id);

    if (kind == InvokeKind::kStatic) {
      // Direct target, linked when the caller's flow is created.
      link_site(site_id, declared);
      return;
    }
    // Steering port: receiver types arriving here drive linking.
    site.receiver_port = new_node(NodeKind::kInvocationReceiver,
                                  model_.method(declared).owner, caller,
                                  site_id);
    add_edge(receiver_source, site.receiver_port);
  }

  void link_site(uint32_t site_id, MethodId callee) {
    Site& site = g_.sites[site_id];
    if (std::find(site.linked.begin(), site.linked.end(), callee) !=
        site.linked.end()) {
      return;
    }
    site.linked.push_back(callee);
    std::string why;
    switch (site.kind) {
      case InvokeKind::kStatic:
        why = "static invoke from " + model_.method_token(site.caller);
        break;
      case InvokeKind::kVirtual:
        why = "virtual dispatch of " + model_.method_token(site.declared) +
              " in " + model_.method_token(site.caller);
        break;
      case InvokeKind::kSpecial:
        why = "special invoke of " + model_.method_token(site.declared);
        break;
    }
    make_reachable(callee, std::move(why));
    link_queue_.emplace_back(site_id, callee);
  }

  // Connects argument sources to callee formals and the callee return to
  // the invocation result. Runs only once the callee's flow exists.
  void connect(uint32_t site_id, MethodId callee) {
    Site& site = g_.sites[site_id];
    const TypeFlowGraph::MethodFlow& mf = g_.methods[callee.index()];
    const MethodDecl& decl = model_.method(callee);
    size_t formal_idx = 0;
    if (!decl.is_static) {
      if (site.receiver_source != kInvalidIndex && !mf.formals.empty()) {
        add_edge(site.receiver_source, mf.formals[0]);
      }
      formal_idx = 1;
    }
    for (size_t i = 0; i < site.arg_sources.size() &&
                       formal_idx + i < mf.formals.size();
         ++i) {
      add_edge(site.arg_sources[i], mf.formals[formal_idx + i]);
    }
    if (site.result_node != kInvalidIndex &&
        mf.return_node != kInvalidIndex) {
      add_edge(mf.return_node, site.result_node);
    }
  }

  // --- propagation ---------------------------------------------------------

  void on_receiver_type(uint32_t site_id, TypeId t) {
    Site& site = g_.sites[site_id];
    if (site.kind == InvokeKind::kSpecial) {
      // Unique statically determined target; the receiver only gates it.
      link_site(site_id, site.declared);
      return;
    }
    ResolveOutcome r = hier_.resolve_method(t, site.declared);
    switch (r.status) {
      case ResolveStatus::kResolved:
        link_site(site_id, r.target);
        break;
      case ResolveStatus::kNoTarget:
        ++no_target_;
        break;
      case ResolveStatus::kAmbiguous:
        ++ambiguous_;
        break;
    }
  }

  void process() {
    while (true) {
      if (!build_queue_.empty()) {
        MethodId m = build_queue_.front();
        build_queue_.pop_front();
        build_method(m);
        continue;
      }
      if (!link_queue_.empty()) {
        // Callee flows exist now: builds always run first.
        auto [site, callee] = link_queue_.back();
        link_queue_.pop_back();
        connect(site, callee);
        continue;
      }
      if (!flow_queue_.empty()) {
        auto [node, t] = flow_queue_.back();
        flow_queue_.pop_back();
        const Node& n = g_.nodes[node];
        if (n.kind == NodeKind::kInvocationReceiver) {
          on_receiver_type(n.aux, t);
        }
        for (size_t i = 0; i < g_.nodes[node].out_edges.size(); ++i) {
          add_type(g_.nodes[node].out_edges[i], t);
        }
        continue;
      }
      break;
    }
  }

  const ProgramModel& model_;
  const Hierarchy& hier_;
  const AnalysisConfig& config_;
  AnalysisState state_;
  HeapScanner scanner_;
  TypeFlowGraph g_;

  std::deque<MethodId> build_queue_;
  std::vector<std::pair<uint32_t, MethodId>> link_queue_;
  std::vector<std::pair<uint32_t, TypeId>> flow_queue_;

  std::vector<std::string> method_prov_;
  std::vector<std::string> type_prov_;
  uint64_t no_target_ = 0;
  uint64_t ambiguous_ = 0;
};

}  // namespace

PtaOutput analyze_pta_with_graph(const ProgramModel& model,
                                 const AnalysisConfig& config) {
  auto start = std::chrono::steady_clock::now();
  Hierarchy hier(model);
  PtaEngine engine(model, hier, config);
  engine.run();
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  PtaOutput out;
  out.result = engine.finish(seconds);
  out.graph = engine.take_graph();
  return out;
}

AnalysisResult analyze_pta(const ProgramModel& model,
                           const AnalysisConfig& config) {
  return analyze_pta_with_graph(model, config).result;
}

std::string dump_type_flow_graph(const ProgramModel& model,
                                 const TypeFlowGraph& graph) {
  std::string out;
  auto node_desc = [&](const Node& n) {
    std::string s;
    switch (n.kind) {
      case NodeKind::kAlloc:
        s = "alloc " + model.types[n.aux].name;
        break;
      case NodeKind::kConstant:
        s = "const " + model.heap[n.aux].name;
        break;
      case NodeKind::kFormal:
        s = "formal " + std::to_string(n.aux);
        break;
      case NodeKind::kReturn:
        s = "return";
        break;
      case NodeKind::kInvocationReceiver:
        s = "recv of " + model.method_token(graph.sites[n.aux].declared);
        break;
      case NodeKind::kInvocationResult:
        s = "result of " + model.method_token(graph.sites[n.aux].declared);
        break;
      case NodeKind::kFieldStore:
        s = "store " + model.field_token(FieldId(n.aux));
        break;
      case NodeKind::kFieldLoad:
        s = "load " + model.field_token(FieldId(n.aux));
        break;
    }
    if (n.method.valid() && n.aux2 != kInvalidIndex &&
        (n.kind == NodeKind::kAlloc || n.kind == NodeKind::kConstant ||
         n.kind == NodeKind::kFormal ||
         n.kind == NodeKind::kInvocationResult)) {
      s += " local=" + model.method(n.method).local_names[n.aux2];
    }
    s += " state={";
    for (size_t i = 0; i < n.types.size(); ++i) {
      if (i) s += ",";
      s += model.type(n.types[i]).name;
    }
    s += "}";
    return s;
  };

  auto emit_node = [&](uint32_t id) {
    out += "  node n" + std::to_string(id) + " " + node_desc(graph.nodes[id]) +
           "\n";
  };
  auto emit_edges = [&](uint32_t id) {
    for (uint32_t to : graph.nodes[id].out_edges) {
      out += "  edge n" + std::to_string(id) + " -> n" + std::to_string(to) +
             "\n";
    }
  };

  for (size_t mi = 0; mi < graph.methods.size(); ++mi) {
    const TypeFlowGraph::MethodFlow& mf = graph.methods[mi];
    if (!mf.built) continue;
    out += "method " + model.method_token(MethodId(static_cast<uint32_t>(mi))) +
           "\n";
    for (uint32_t n : mf.nodes) emit_node(n);
    for (uint32_t n : mf.nodes) emit_edges(n);
    for (uint32_t si : mf.sites) {
      const Site& site = graph.sites[si];
      out += "  site s" + std::to_string(si) + " ";
      switch (site.kind) {
        case InvokeKind::kStatic:
          out += "static ";
          break;
        case InvokeKind::kVirtual:
          out += "virtual ";
          break;
        case InvokeKind::kSpecial:
          out += "special ";
          break;
      }
      out += model.method_token(site.declared);
      if (site.receiver_port != kInvalidIndex) {
        out += " recv=n" + std::to_string(site.receiver_port);
      }
      out += " args=[";
      for (size_t i = 0; i < site.arg_sources.size(); ++i) {
        if (i) out += ",";
        out += "n" + std::to_string(site.arg_sources[i]);
      }
      out += "]";
      if (site.result_node != kInvalidIndex) {
        out += " result=n" + std::to_string(site.result_node);
      }
      out += " targets={";
      std::vector<std::string> targets;
      for (MethodId t : site.linked) targets.push_back(model.method_token(t));
      std::sort(targets.begin(), targets.end());
      for (size_t i = 0; i < targets.size(); ++i) {
        if (i) out += ",";
        out += targets[i];
      }
      out += "}\n";
    }
  }

  bool field_header = false;
  for (size_t fi = 0; fi < graph.field_store_node.size(); ++fi) {
    if (graph.field_store_node[fi] == kInvalidIndex) continue;
    if (!field_header) {
      out += "fields\n";
      field_header = true;
    }
    emit_node(graph.field_store_node[fi]);
    emit_node(graph.field_load_node[fi]);
    emit_edges(graph.field_store_node[fi]);
  }
  return out;
}

}  // namespace reach
