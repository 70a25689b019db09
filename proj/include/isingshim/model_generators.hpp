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
#include <utility>
#include <vector>

#include "isingshim/ising_model.hpp"

namespace isingshim {

// Periodic chain 0-1-...-(L-1)-0 with every coupling equal to `coupling`.
IsingModel make_fm_loop(int length, double coupling);

// As make_fm_loop, with the (0, 1) coupling negated.
IsingModel make_frustrated_loop(int length, double coupling);

// Truncated icosahedron (60 spins, 90 couplings), all J = +1, h = 0.
//
// Spins are the directed edges (u, v) of an icosahedron, in lexicographic
// order. (u, v) ~ (u, w) when v and w are adjacent (pentagon edges around u);
// (u, v) ~ (v, u) are the hexagon-hexagon edges.
IsingModel make_buckyball();

// Square lattice, periodic along rows and open along columns, whose vertical
// two-spin chains contract to a triangular antiferromagnet.
//
// Spin (r, c) has index r * cols + c. Column c pairs rows (2k + c % 2,
// 2k + 1 + c % 2) modulo `rows`, so chains in neighbouring columns are offset
// by one row; that offset plays the role of the triangular diagonal. Chain
// couplings are -2 * afm_coupling, every other lattice coupling is
// afm_coupling. Contracting the chains gives each logical pair exactly one
// physical coupling.
struct SquareCylinder {
  IsingModel model;
  std::vector<std::pair<int, int>> chain_pairs;
  int rows = 0;
  int cols = 0;

  int index(int row, int col) const { return row * cols + col; }
  // Coupling indices of AFM couplers joining two chains inside the first or
  // last column (the open boundary).
  std::vector<std::size_t> boundary_couplers() const;
  // Coupling indices of chain (FM) couplers and of AFM couplers.
  std::vector<std::size_t> chain_couplers() const;
  std::vector<std::size_t> afm_couplers() const;
};

// Requires rows even and >= 6, cols >= 2.
SquareCylinder make_square_cylinder(int rows, int cols, double afm_coupling);

// Coupling signs drawn uniformly from {-magnitude, +magnitude} on the edge set
// of `structure`; fields zero.
IsingModel make_spin_glass(const IsingModel& structure, double magnitude, std::uint64_t seed);

}  // namespace isingshim
