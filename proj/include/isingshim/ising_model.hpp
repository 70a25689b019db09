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
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace isingshim {

using Spin = std::int8_t;
using SpinState = std::vector<Spin>;

struct Coupling {
  int i = 0;
  int j = 0;
  double value = 0.0;

  bool operator==(const Coupling&) const = default;
};

// Classical Ising problem H(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j.
//
// Couplings are stored once per unordered pair with i < j, sorted
// lexicographically; the position in that order is the coupling index used
// throughout the library. Zero couplings are not representable: passing one
// is an error rather than a silent drop.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(int num_spins);
  IsingModel(int num_spins, std::vector<double> fields, std::vector<Coupling> couplings);

  int num_spins() const noexcept { return num_spins_; }
  std::size_t num_couplings() const noexcept { return couplings_.size(); }

  double field(int i) const { return fields_.at(static_cast<std::size_t>(i)); }
  std::span<const double> fields() const noexcept { return fields_; }
  std::span<const Coupling> couplings() const noexcept { return couplings_; }

  // Order-insensitive lookup.
  std::optional<std::size_t> coupling_index(int i, int j) const;
  // 0 when the pair is uncoupled.
  double coupling(int i, int j) const;
  std::vector<double> coupling_values() const;

  // Neighbor lists: adjacency()[i] holds (neighbor, coupling index) pairs.
  std::vector<std::vector<std::pair<int, std::size_t>>> adjacency() const;

  IsingModel with_fields(std::vector<double> fields) const;
  IsingModel with_coupling_values(std::span<const double> values) const;

  // FNV-1a over the exact bit patterns; used for sample provenance.
  std::uint64_t hash() const;

  bool operator==(const IsingModel&) const = default;

 private:
  int num_spins_ = 0;
  std::vector<double> fields_;
  std::vector<Coupling> couplings_;
};

double energy(const IsingModel& model, std::span<const Spin> state);

// 1 when the coupler contributes positive energy, 0 otherwise.
inline int frustration_indicator(double coupling, Spin si, Spin sj) {
  const int sign = coupling > 0 ? 1 : -1;
  return sign * si * sj > 0 ? 1 : 0;
}

// Spin-reversal (gauge) transform over a set of spins.
struct GaugeTransform {
  std::vector<int> flip_set;
};

IsingModel apply_gauge(const IsingModel& model, const GaugeTransform& gauge);
SpinState apply_gauge(std::span<const Spin> state, const GaugeTransform& gauge);

// Auxiliary model on 2N spins: spin i becomes plain_of[i] = i and its
// negation bar_of[i] = N + i. Every coupling (i, j) expands to four signed
// couplings; fields of barred spins are negated.
struct SignedIsingModel {
  IsingModel base;
  std::vector<int> plain_of;
  std::vector<int> bar_of;
};

SignedIsingModel build_signed(const IsingModel& model);

// Vertex- and edge-labeled simple graph. Labels are dense ids from 0.
struct LabeledGraph {
  std::vector<int> vertex_labels;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> edge_labels;

  int num_vertices() const noexcept { return static_cast<int>(vertex_labels.size()); }
};

// Field and coupling values are compared after rounding to this grid.
inline constexpr double kLabelResolution = 1e-9;

// Vertex-only encoding of the signed model: vertices [0, 2N) are the signed
// spins, vertex 2N + c is the subdivision vertex of signed coupling c. Spin
// labels and coupling labels occupy disjoint id ranges; all edge labels are 0.
LabeledGraph signed_to_labeled_graph(const SignedIsingModel& signed_model);

struct ContractedModel {
  IsingModel logical;
  std::vector<int> logical_of;  // physical spin -> logical spin
};

// Merges each chain pair into one logical spin. Logical spins are numbered
// by their smallest physical member; parallel couplings are summed (and
// dropped if they cancel), fields are summed, chain couplings disappear.
ContractedModel contract_chains(const IsingModel& model,
                                std::span<const std::pair<int, int>> chain_pairs);

}  // namespace isingshim
