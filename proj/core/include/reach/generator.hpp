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

#include <cstdint>

#include "reach/model.hpp"

namespace reach {

// Knobs for the synthetic corpus generator. The same spec always yields a
// byte-identical model. Generation is biased toward deep hierarchies and
// interface-heavy call sites, where the two engines diverge the most.
struct CorpusSpec {
  uint64_t seed = 1;
  uint32_t type_count = 20;
  uint32_t method_count = 60;
  uint32_t max_hierarchy_depth = 5;
  double interface_density = 0.25;  // fraction of types that are interfaces
  double call_density = 2.0;        // expected invokes per method body
  double field_density = 1.0;       // expected declared fields per class
  uint32_t heap_object_count = 8;
};

// Produces a valid model (validate() is empty) with a single root
// Main.main(); deterministic per spec.
ProgramModel generate_model(const CorpusSpec& spec);

}  // namespace reach
