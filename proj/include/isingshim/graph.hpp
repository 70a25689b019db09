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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "isingshim/ising_model.hpp"

namespace isingshim {

// Undirected simple graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);
  Graph(int num_vertices, std::span<const std::pair<int, int>> edges);

  int num_vertices() const noexcept { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int u, int v) const;

  // Each edge once as (u, v) with u < v, sorted.
  std::vector<std::pair<int, int>> edges() const;

  // Subgraph induced by `vertices`; vertex k of the result is vertices[k].
  Graph induced(std::span<const int> vertices) const;

 private:
  std::vector<std::vector<int>> adj_;
  std::size_t num_edges_ = 0;
};

// Interaction graph of a model (one edge per coupling).
Graph interaction_graph(const IsingModel& model);

}  // namespace isingshim
