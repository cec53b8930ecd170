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

#include <string>
#include <vector>

#include "reach/analysis.hpp"

namespace reach {

// Interprocedural type-flow graph: per-method flows built lazily for
// reachable methods, connected through argument/return edges and global
// per-field join nodes. Each node carries a monotone type-state filtered
// by the node's declared type.
struct TypeFlowGraph {
  enum class NodeKind : uint8_t {
    kAlloc,
    kConstant,
    kFormal,
    kReturn,
    kInvocationReceiver,  // steering port: new receiver types trigger linking
    kInvocationResult,
    kFieldStore,  // all stores of a field join here
    kFieldLoad,   // all loads of a field read from here
  };

  struct Node {
    NodeKind kind;
    TypeId declared;   // type filter; invalid = unfiltered
    MethodId method;   // owning method; invalid for field nodes
    uint32_t aux = kInvalidIndex;   // kind-specific: site/slot/field/object
    uint32_t aux2 = kInvalidIndex;  // kind-specific: defining local
    std::vector<uint32_t> out_edges;
    std::vector<TypeId> types;  // sorted, grows monotonically
  };

  enum class InvokeKind : uint8_t { kStatic, kVirtual, kSpecial };

  struct InvocationSite {
    InvokeKind kind;
    MethodId declared;
    MethodId caller;
    uint32_t receiver_port = kInvalidIndex;    // virtual/special only
    uint32_t receiver_source = kInvalidIndex;  // node feeding the port
    std::vector<uint32_t> arg_sources;
    uint32_t result_node = kInvalidIndex;
    std::vector<MethodId> linked;  // callees connected at this site
  };

  struct MethodFlow {
    bool built = false;
    std::vector<uint32_t> formals;  // `this` first for instance methods
    uint32_t return_node = kInvalidIndex;
    std::vector<uint32_t> sites;  // indexes into `sites`
    std::vector<uint32_t> nodes;  // every node of this method, in order
  };

  std::vector<Node> nodes;
  std::vector<InvocationSite> sites;
  std::vector<MethodFlow> methods;          // indexed by MethodId
  std::vector<uint32_t> field_store_node;   // per FieldId, invalid until used
  std::vector<uint32_t> field_load_node;
};

struct PtaOutput {
  AnalysisResult result;
  TypeFlowGraph graph;
};

// Type-flow points-to analysis over the model: flow-sensitive for locals
// (single assignment), flow-insensitive for fields, objects abstracted by
// type. Returns the same result shape as the reachability engine; its
// result sets are subsets of that engine's on every model.
// Runs single-threaded regardless of config.threads.
AnalysisResult analyze_pta(const ProgramModel& model,
                           const AnalysisConfig& config);
PtaOutput analyze_pta_with_graph(const ProgramModel& model,
                                 const AnalysisConfig& config);

// Text listing of nodes, edges, and invocation sites, for debugging and
// golden tests.
std::string dump_type_flow_graph(const ProgramModel& model,
                                 const TypeFlowGraph& graph);

}  // namespace reach
