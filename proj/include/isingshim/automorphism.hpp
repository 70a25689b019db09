// Copyright 2026 The isingshim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isingshim/ising_model.hpp"

namespace isingshim {

// image[v] is the vertex v maps to.
using Permutation = std::vector<int>;

struct AutomorphismOptions {
  // Refinement nodes the search may visit before giving up.
  std::uint64_t node_budget = 10'000'000;
};

// True when `perm` is a bijection preserving vertex labels, adjacency and
// edge labels of `graph`.
bool is_automorphism(const LabeledGraph& graph, const Permutation& perm);

// Generating set of the label-preserving automorphism group.
//
// Individualization-refinement search: colour refinement (1-WL with edge
// labels) prunes; the target cell is the first smallest non-singleton cell.
// Starting from the deepest level of the first path, each level's target cell
// is scanned for vertices not yet in the orbit of the first-path vertex, and
// the subtree below each is searched for one leaf equivalent to the first
// leaf. The found permutations generate the whole group (stabilizer chain).
// Throws ResourceLimitExceeded when the node budget runs out.
std::vector<Permutation> automorphism_generators(const LabeledGraph& graph,
                                                 const AutomorphismOptions& options = {});

struct OrbitPartition {
  std::vector<int> vertex_orbit;  // orbit id = smallest member vertex
  std::vector<int> edge_orbit;    // orbit id = smallest member edge index
};

// Finest partitions closed under all generators. Throws std::invalid_argument
// when a generator is not an automorphism.
OrbitPartition vertex_and_edge_orbits(const LabeledGraph& graph,
                                      std::span<const Permutation> generators);

}  // namespace isingshim
