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
#include <cstdint>
#include <span>
#include <vector>

#include "isingshim/graph.hpp"

namespace isingshim {

struct SubgraphOptions {
  std::size_t limit = 1;
  // Assignment attempts before the search stops early.
  std::uint64_t node_budget = 1'000'000;
  // Permutes the order in which root candidates are tried.
  std::uint64_t seed = 0;
};

struct SubgraphResult {
  std::vector<std::vector<int>> maps;  // maps[k][pattern vertex] = target vertex
  bool truncated = false;
  std::uint64_t nodes = 0;
};

// Injective maps sending every pattern edge onto a target edge (extra target
// edges are allowed). Backtracking over a connected pattern order with degree
// and distance filtering. Each returned map is verified before it is kept.
SubgraphResult find_subgraph(const Graph& pattern, const Graph& target,
                             const SubgraphOptions& options = {});

bool is_subgraph_map(const Graph& pattern, const Graph& target, std::span<const int> map);

}  // namespace isingshim
