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

#include "isingshim/ising_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace isingshim {

namespace {

void check_spin(int i, int num_spins) {
  if (i < 0 || i >= num_spins) {
    throw std::out_of_range("spin index " + std::to_string(i) + " out of range [0, " +
                            std::to_string(num_spins) + ")");
  }
}

bool pair_less(const Coupling& a, const Coupling& b) {
  return a.i != b.i ? a.i < b.i : a.j < b.j;
}

std::int64_t quantize(double value) {
  return static_cast<std::int64_t>(std::llround(value / kLabelResolution));
}

}  // namespace

IsingModel::IsingModel(int num_spins) : IsingModel(num_spins, {}, {}) {}

IsingModel::IsingModel(int num_spins, std::vector<double> fields,
                       std::vector<Coupling> couplings)
    : num_spins_(num_spins), fields_(std::move(fields)), couplings_(std::move(couplings)) {
  if (num_spins < 0) throw std::invalid_argument("negative spin count");
  if (fields_.empty()) fields_.assign(static_cast<std::size_t>(num_spins), 0.0);
  if (fields_.size() != static_cast<std::size_t>(num_spins)) {
    throw std::invalid_argument("field vector length does not match spin count");
  }
  for (double h : fields_) {
    if (!std::isfinite(h)) throw std::invalid_argument("non-finite field");
  }
  for (auto& c : couplings_) {
    check_spin(c.i, num_spins);
    check_spin(c.j, num_spins);
    if (c.i == c.j) throw std::invalid_argument("self coupling on spin " + std::to_string(c.i));
    if (c.value == 0.0) {
      throw std::invalid_argument("zero coupling on (" + std::to_string(c.i) + ", " +
                                  std::to_string(c.j) + ")");
    }
    if (!std::isfinite(c.value)) throw std::invalid_argument("non-finite coupling");
    if (c.i > c.j) std::swap(c.i, c.j);
  }
  std::sort(couplings_.begin(), couplings_.end(), pair_less);
  for (std::size_t k = 1; k < couplings_.size(); ++k) {
    if (couplings_[k - 1].i == couplings_[k].i && couplings_[k - 1].j == couplings_[k].j) {
      throw std::invalid_argument("duplicate coupling (" + std::to_string(couplings_[k].i) +
                                  ", " + std::to_string(couplings_[k].j) + ")");
    }
  }
}

std::optional<std::size_t> IsingModel::coupling_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  const Coupling key{i, j, 0.0};
  auto it = std::lower_bound(couplings_.begin(), couplings_.end(), key, pair_less);
  if (it == couplings_.end() || it->i != i || it->j != j) return std::nullopt;
  return static_cast<std::size_t>(it - couplings_.begin());
}

double IsingModel::coupling(int i, int j) const {
  auto idx = coupling_index(i, j);
  return idx ? couplings_[*idx].value : 0.0;
}

std::vector<double> IsingModel::coupling_values() const {
  std::vector<double> out;
  out.reserve(couplings_.size());
  for (const auto& c : couplings_) out.push_back(c.value);
  return out;
}

std::vector<std::vector<std::pair<int, std::size_t>>> IsingModel::adjacency() const {
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(num_spins_));
  for (std::size_t k = 0; k < couplings_.size(); ++k) {
    adj[couplings_[k].i].emplace_back(couplings_[k].j, k);
    adj[couplings_[k].j].emplace_back(couplings_[k].i, k);
  }
  return adj;
}

IsingModel IsingModel::with_fields(std::vector<double> fields) const {
  if (fields.size() != fields_.size()) throw std::invalid_argument("field vector length mismatch");
  IsingModel out = *this;
  for (double h : fields) {
    if (!std::isfinite(h)) throw std::invalid_argument("non-finite field");
  }
  out.fields_ = std::move(fields);
  return out;
}

IsingModel IsingModel::with_coupling_values(std::span<const double> values) const {
  if (values.size() != couplings_.size()) {
    throw std::invalid_argument("coupling vector length mismatch");
  }
  IsingModel out = *this;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == 0.0 || !std::isfinite(values[k])) {
      throw std::invalid_argument("coupling value must be finite and nonzero");
    }
    out.couplings_[k].value = values[k];
  }
  return out;
}

std::uint64_t IsingModel::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(num_spins_));
  for (double v : fields_) mix(std::bit_cast<std::uint64_t>(v));
  for (const auto& c : couplings_) {
    mix(static_cast<std::uint64_t>(c.i));
    mix(static_cast<std::uint64_t>(c.j));
    mix(std::bit_cast<std::uint64_t>(c.value));
  }
  return h;
}

double energy(const IsingModel& model, std::span<const Spin> state) {
  if (state.size() != static_cast<std::size_t>(model.num_spins())) {
    throw std::invalid_argument("state length " + std::to_string(state.size()) +
                                " does not match spin count " +
                                std::to_string(model.num_spins()));
  }
  double e = 0.0;
  for (int i = 0; i < model.num_spins(); ++i) e += model.field(i) * state[i];
  for (const auto& c : model.couplings()) e += c.value * state[c.i] * state[c.j];
  return e;
}

namespace {

std::vector<bool> flip_mask(int num_spins, const GaugeTransform& gauge) {
  std::vector<bool> mask(static_cast<std::size_t>(num_spins), false);
  for (int i : gauge.flip_set) {
    check_spin(i, num_spins);
    mask[i] = true;
  }
  return mask;
}

}  // namespace

IsingModel apply_gauge(const IsingModel& model, const GaugeTransform& gauge) {
  const auto mask = flip_mask(model.num_spins(), gauge);
  std::vector<double> fields(model.fields().begin(), model.fields().end());
  for (int i = 0; i < model.num_spins(); ++i) {
    if (mask[i]) fields[i] = -fields[i];
  }
  std::vector<Coupling> couplings(model.couplings().begin(), model.couplings().end());
  for (auto& c : couplings) {
    if (mask[c.i] != mask[c.j]) c.value = -c.value;
  }
  return IsingModel(model.num_spins(), std::move(fields), std::move(couplings));
}

SpinState apply_gauge(std::span<const Spin> state, const GaugeTransform& gauge) {
  const auto mask = flip_mask(static_cast<int>(state.size()), gauge);
  SpinState out(state.begin(), state.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (mask[i]) out[i] = static_cast<Spin>(-out[i]);
  }
  return out;
}

SignedIsingModel build_signed(const IsingModel& model) {
  const int n = model.num_spins();
  SignedIsingModel out;
  out.plain_of.resize(static_cast<std::size_t>(n));
  out.bar_of.resize(static_cast<std::size_t>(n));
  std::vector<double> fields(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    out.plain_of[i] = i;
    out.bar_of[i] = n + i;
    fields[i] = model.field(i);
    fields[n + i] = -model.field(i);
  }
  std::vector<Coupling> couplings;
  couplings.reserve(4 * model.num_couplings());
  for (const auto& c : model.couplings()) {
    couplings.push_back({c.i, c.j, c.value});
    couplings.push_back({n + c.i, n + c.j, c.value});
    couplings.push_back({n + c.i, c.j, -c.value});
    couplings.push_back({c.i, n + c.j, -c.value});
  }
  out.base = IsingModel(2 * n, std::move(fields), std::move(couplings));
  return out;
}

LabeledGraph signed_to_labeled_graph(const SignedIsingModel& signed_model) {
  const IsingModel& m = signed_model.base;
  const int n = m.num_spins();

  std::map<std::int64_t, int> field_label;
  for (double h : m.fields()) field_label.emplace(quantize(h), 0);
  int next = 0;
  for (auto& [key, label] : field_label) label = next++;

  std::map<std::int64_t, int> coupling_label;
  for (const auto& c : m.couplings()) coupling_label.emplace(quantize(c.value), 0);
  for (auto& [key, label] : coupling_label) label = next++;

  LabeledGraph g;
  g.vertex_labels.reserve(static_cast<std::size_t>(n) + m.num_couplings());
  for (double h : m.fields()) g.vertex_labels.push_back(field_label.at(quantize(h)));
  g.edges.reserve(2 * m.num_couplings());
  for (std::size_t k = 0; k < m.num_couplings(); ++k) {
    const auto& c = m.couplings()[k];
    const int sub = n + static_cast<int>(k);
    g.vertex_labels.push_back(coupling_label.at(quantize(c.value)));
    g.edges.emplace_back(c.i, sub);
    g.edges.emplace_back(c.j, sub);
  }
  g.edge_labels.assign(g.edges.size(), 0);
  return g;
}

ContractedModel contract_chains(const IsingModel& model,
                                std::span<const std::pair<int, int>> chain_pairs) {
  const int n = model.num_spins();
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  for (auto [a, b] : chain_pairs) {
    check_spin(a, n);
    check_spin(b, n);
    if (a == b || partner[a] != -1 || partner[b] != -1) {
      throw std::invalid_argument("chain pairs overlap at (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ")");
    }
    if (!model.coupling_index(a, b)) {
      throw std::invalid_argument("chain pair (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") is not coupled");
    }
    partner[a] = b;
    partner[b] = a;
  }

  ContractedModel out;
  out.logical_of.assign(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (out.logical_of[i] != -1) continue;
    out.logical_of[i] = next;
    if (partner[i] != -1) out.logical_of[partner[i]] = next;
    ++next;
  }

  std::vector<double> fields(static_cast<std::size_t>(next), 0.0);
  for (int i = 0; i < n; ++i) fields[out.logical_of[i]] += model.field(i);

  std::map<std::pair<int, int>, double> summed;
  for (const auto& c : model.couplings()) {
    int a = out.logical_of[c.i];
    int b = out.logical_of[c.j];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    summed[{a, b}] += c.value;
  }
  std::vector<Coupling> couplings;
  for (const auto& [key, value] : summed) {
    if (value != 0.0) couplings.push_back({key.first, key.second, value});
  }
  out.logical = IsingModel(next, std::move(fields), std::move(couplings));
  return out;
}

}  // namespace isingshim
