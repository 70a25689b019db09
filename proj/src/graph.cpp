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

#include "isingshim/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace isingshim {

Graph::Graph(int num_vertices) {
  if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
  adj_.resize(static_cast<std::size_t>(num_vertices));
}

Graph::Graph(int num_vertices, std::span<const std::pair<int, int>> edges) : Graph(num_vertices) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self loop");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("parallel edge");
    }
    num_edges_ += list.size();
  }
  num_edges_ /= 2;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || u >= num_vertices()) return false;
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(num_edges_);
  for (int u = 0; u < num_vertices(); ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const int> vertices) const {
  std::vector<int> local(adj_.size(), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if (local.at(static_cast<std::size_t>(vertices[k])) != -1) {
      throw std::invalid_argument("repeated vertex in induced subgraph");
    }
    local[vertices[k]] = static_cast<int>(k);
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    for (int w : adj_[vertices[k]]) {
      const int lw = local[w];
      if (lw > static_cast<int>(k)) edges.emplace_back(static_cast<int>(k), lw);
    }
  }
  return Graph(static_cast<int>(vertices.size()), edges);
}

Graph interaction_graph(const IsingModel& model) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(model.num_couplings());
  for (const auto& c : model.couplings()) edges.emplace_back(c.i, c.j);
  return Graph(model.num_spins(), edges);
}

}  // namespace isingshim
