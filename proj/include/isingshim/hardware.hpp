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

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "isingshim/graph.hpp"

namespace isingshim {

struct CellCoord {
  int row = 0;
  int col = 0;

  auto operator<=>(const CellCoord&) const = default;
};

// Qubit connectivity of an annealer. Edges touching inoperable qubits are
// removed from `graph`, so every edge in it is usable.
struct HardwareGraph {
  std::string family;
  std::vector<int> shape;
  Graph graph;
  std::vector<bool> operable;
  std::map<CellCoord, std::vector<int>> cells;
  int cell_rows = 0;
  int cell_cols = 0;

  int num_qubits() const noexcept { return graph.num_vertices(); }
  // "chimera:m,n,t" or "pegasus:m".
  std::string spec() const;
};

// Chimera C(m, n, t): an m x n grid of K_{t,t} cells. Qubit (i, j, u, k) has
// index ((i * n + j) * 2 + u) * t + k; u = 0 qubits couple vertically to the
// cell below, u = 1 qubits horizontally to the cell on the right.
HardwareGraph make_chimera(int m, int n, int t);

// Pegasus P(m) with 24 m (m - 1) qubits, from the geometric definition: qubit
// (u, w, k, z) is a length-12 segment, vertical when u = 0, with index
// z + (m - 1) * (k + 12 * (w + m * u)). Crossing perpendicular segments carry
// internal couplers, collinear neighbours (z, z + 1) external couplers, and
// pairs (2j, 2j + 1) with equal u, w, z odd couplers. The cell of a qubit is
// the 12 x 12 tile containing its midpoint, giving an m x m cell grid.
HardwareGraph make_pegasus(int m);

// Marks `dead` qubits inoperable and drops their edges.
HardwareGraph mask_qubits(const HardwareGraph& hardware, std::span<const int> dead);

// Parses "chimera:m,n,t", "chimera:m" (n = m, t = 4) or "pegasus:m".
HardwareGraph parse_hardware(const std::string& spec);

}  // namespace isingshim
