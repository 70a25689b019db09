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

#include "isingshim/model_generators.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace isingshim {

namespace {

std::vector<Coupling> cycle_couplings(int length, double coupling) {
  std::vector<Coupling> couplings;
  couplings.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) couplings.push_back({i, (i + 1) % length, coupling});
  return couplings;
}

void check_loop(int length, double coupling) {
  if (length < 3) throw std::invalid_argument("loop length must be at least 3");
  if (coupling == 0.0) throw std::invalid_argument("loop coupling must be nonzero");
}

// Icosahedron: apex 0, upper ring 1..5, lower ring 6..10, apex 11.
std::vector<std::pair<int, int>> icosahedron_edges() {
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < 5; ++k) {
    const int upper = 1 + k;
    const int upper_next = 1 + (k + 1) % 5;
    const int lower = 6 + k;
    const int lower_next = 6 + (k + 1) % 5;
    edges.emplace_back(0, upper);
    edges.emplace_back(upper, upper_next);
    edges.emplace_back(upper, lower);
    edges.emplace_back(upper_next, lower);
    edges.emplace_back(lower, lower_next);
    edges.emplace_back(lower, 11);
  }
  return edges;
}

}  // namespace

IsingModel make_fm_loop(int length, double coupling) {
  check_loop(length, coupling);
  return IsingModel(length, {}, cycle_couplings(length, coupling));
}

IsingModel make_frustrated_loop(int length, double coupling) {
  check_loop(length, coupling);
  auto couplings = cycle_couplings(length, coupling);
  couplings.front().value = -coupling;
  return IsingModel(length, {}, std::move(couplings));
}

IsingModel make_buckyball() {
  std::set<std::pair<int, int>> adjacent;
  for (auto [a, b] : icosahedron_edges()) {
    adjacent.emplace(a, b);
    adjacent.emplace(b, a);
  }
  std::map<std::pair<int, int>, int> spin_of;
  for (const auto& arc : adjacent) spin_of.emplace(arc, static_cast<int>(spin_of.size()));

  std::vector<Coupling> couplings;
  for (const auto& [arc, s] : spin_of) {
    const auto [u, v] = arc;
    if (u < v) couplings.push_back({s, spin_of.at({v, u}), 1.0});
    for (const auto& [other, t] : spin_of) {
      if (other.first != u || t <= s) continue;
      if (adjacent.count({v, other.second})) couplings.push_back({s, t, 1.0});
    }
  }
  return IsingModel(static_cast<int>(spin_of.size()), {}, std::move(couplings));
}

SquareCylinder make_square_cylinder(int rows, int cols, double afm_coupling) {
  if (rows < 6 || rows % 2 != 0) {
    throw std::invalid_argument("square cylinder needs an even row count of at least 6, got " +
                                std::to_string(rows));
  }
  if (cols < 2) throw std::invalid_argument("square cylinder needs at least 2 columns");
  if (afm_coupling == 0.0) throw std::invalid_argument("AFM coupling must be nonzero");

  SquareCylinder out;
  out.rows = rows;
  out.cols = cols;
  const double fm = -2.0 * afm_coupling;

  std::set<std::pair<int, int>> chains;
  for (int c = 0; c < cols; ++c) {
    for (int k = 0; k < rows / 2; ++k) {
      const int r = 2 * k + c % 2;
      int a = out.index(r, c);
      int b = out.index((r + 1) % rows, c);
      out.chain_pairs.emplace_back(std::min(a, b), std::max(a, b));
      chains.emplace(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(out.chain_pairs.begin(), out.chain_pairs.end());

  std::vector<Coupling> couplings;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int a = out.index(r, c);
      const int below = out.index((r + 1) % rows, c);
      const bool chain = chains.count({std::min(a, below), std::max(a, below)}) > 0;
      couplings.push_back({a, below, chain ? fm : afm_coupling});
      if (c + 1 < cols) couplings.push_back({a, out.index(r, c + 1), afm_coupling});
    }
  }
  out.model = IsingModel(rows * cols, {}, std::move(couplings));
  return out;
}

std::vector<std::size_t> SquareCylinder::chain_couplers() const {
  std::vector<std::size_t> out;
  for (auto [a, b] : chain_pairs) out.push_back(*model.coupling_index(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> SquareCylinder::afm_couplers() const {
  const auto chain = chain_couplers();
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < model.num_couplings(); ++k) {
    if (!std::binary_search(chain.begin(), chain.end(), k)) out.push_back(k);
  }
  return out;
}

std::vector<std::size_t> SquareCylinder::boundary_couplers() const {
  std::vector<std::size_t> out;
  for (std::size_t k : afm_couplers()) {
    const auto& c = model.couplings()[k];
    const int ci = c.i % cols;
    const int cj = c.j % cols;
    if (ci == cj && (ci == 0 || ci == cols - 1)) out.push_back(k);
  }
  return out;
}

IsingModel make_spin_glass(const IsingModel& structure, double magnitude, std::uint64_t seed) {
  if (magnitude <= 0.0) throw std::invalid_argument("spin-glass magnitude must be positive");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<Coupling> couplings;
  for (const auto& c : structure.couplings()) {
    couplings.push_back({c.i, c.j, coin(rng) ? magnitude : -magnitude});
  }
  return IsingModel(structure.num_spins(), {}, std::move(couplings));
}

}  // namespace isingshim
