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

#include "isingshim/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace isingshim {

std::vector<double> magnetizations(const SampleSet& samples) {
  if (samples.reads() == 0) throw std::invalid_argument("magnetizations: empty sample set");
  std::vector<long> sums(static_cast<std::size_t>(samples.num_spins()), 0);
  for (int r = 0; r < samples.reads(); ++r) {
    const auto row = samples.read(r);
    for (std::size_t i = 0; i < row.size(); ++i) sums[i] += row[i];
  }
  std::vector<double> m(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) m[i] = static_cast<double>(sums[i]) / samples.reads();
  return m;
}

std::vector<double> frustrations(const SampleSet& samples, const IsingModel& model) {
  if (samples.reads() == 0) throw std::invalid_argument("frustrations: empty sample set");
  if (samples.num_spins() != model.num_spins()) {
    throw std::invalid_argument("frustrations: sample width does not match model");
  }
  const auto couplings = model.couplings();
  std::vector<long> counts(couplings.size(), 0);
  for (int r = 0; r < samples.reads(); ++r) {
    const auto row = samples.read(r);
    for (std::size_t k = 0; k < couplings.size(); ++k) {
      const auto& c = couplings[k];
      counts[k] += frustration_indicator(c.value, row[c.i], row[c.j]);
    }
  }
  std::vector<double> f(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) f[k] = static_cast<double>(counts[k]) / samples.reads();
  return f;
}

namespace {

template <class Key>
std::map<int, std::vector<Key>> members_by_orbit(const std::vector<int>& orbit_of) {
  std::map<int, std::vector<Key>> members;
  for (std::size_t x = 0; x < orbit_of.size(); ++x) members[orbit_of[x]].push_back(static_cast<Key>(x));
  return members;
}

}  // namespace

std::vector<std::vector<std::size_t>> coupler_groups(const Orbits& orbits) {
  const auto members = members_by_orbit<std::size_t>(orbits.coupler_orbit);
  std::vector<std::vector<std::size_t>> groups;
  for (const auto& [orbit, list] : members) {
    const auto opposite = orbits.opposite_of_coupler_orbit(orbit);
    if (opposite && *opposite < orbit) continue;
    auto group = list;
    if (opposite && *opposite != orbit) {
      const auto& other = members.at(*opposite);
      group.insert(group.end(), other.begin(), other.end());
    }
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  return groups;
}

std::map<int, double> qubit_orbit_means(std::span<const double> m, const Orbits& orbits) {
  if (m.size() != orbits.qubit_orbit.size()) {
    throw std::invalid_argument("orbit_means: magnetizations do not match qubit orbits");
  }
  std::map<int, double> means;
  const auto qubits = members_by_orbit<int>(orbits.qubit_orbit);
  for (const auto& [orbit, list] : qubits) {
    const auto opposite = orbits.opposite_of_qubit_orbit(orbit);
    if (opposite && *opposite == orbit) {
      means[orbit] = 0.0;
      continue;
    }
    double sum = 0.0;
    for (int i : list) sum += m[static_cast<std::size_t>(i)];
    std::size_t count = list.size();
    if (opposite) {
      for (int j : qubits.at(*opposite)) sum -= m[static_cast<std::size_t>(j)];
      count += qubits.at(*opposite).size();
    }
    means[orbit] = sum / static_cast<double>(count);
  }
  return means;
}

std::map<int, double> coupler_orbit_means(std::span<const double> f, const Orbits& orbits) {
  if (f.size() != orbits.coupler_orbit.size()) {
    throw std::invalid_argument("orbit_means: frustrations do not match coupler orbits");
  }
  std::map<int, double> means;
  for (const auto& group : coupler_groups(orbits)) {
    double sum = 0.0;
    for (std::size_t k : group) sum += f[k];
    const double mean = sum / static_cast<double>(group.size());
    for (std::size_t k : group) means[orbits.coupler_orbit[k]] = mean;
  }
  return means;
}

OrbitMeans orbit_means(std::span<const double> m, std::span<const double> f, const Orbits& orbits) {
  return {qubit_orbit_means(m, orbits), coupler_orbit_means(f, orbits)};
}

double population_std(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

namespace {

std::pair<double, double> dispersion_over(const ObservableSeries& series,
                                          const std::vector<std::vector<std::size_t>>& groups,
                                          std::size_t window, std::size_t end) {
  const std::size_t qubits = series.magnetization[end].size();
  const std::size_t couplers = series.frustration[end].size();
  std::vector<double> m_avg(qubits, 0.0);
  std::vector<double> f_avg(couplers, 0.0);
  for (std::size_t t = end + 1 - window; t <= end; ++t) {
    for (std::size_t i = 0; i < qubits; ++i) m_avg[i] += series.magnetization[t][i];
    for (std::size_t k = 0; k < couplers; ++k) f_avg[k] += series.frustration[t][k];
  }
  for (auto& v : m_avg) v /= static_cast<double>(window);
  for (auto& v : f_avg) v /= static_cast<double>(window);
  double total = 0.0;
  std::vector<double> values;
  for (const auto& group : groups) {
    values.clear();
    for (std::size_t k : group) values.push_back(f_avg[k]);
    total += population_std(values);
  }
  return {population_std(m_avg), groups.empty() ? 0.0 : total / static_cast<double>(groups.size())};
}

void check_window(std::size_t window, std::size_t available) {
  if (window == 0) throw std::invalid_argument("dispersion: window must be at least 1");
  if (window > available) {
    throw std::invalid_argument("dispersion: window " + std::to_string(window) + " exceeds history " +
                                std::to_string(available));
  }
}

}  // namespace

std::pair<double, double> window_dispersion(const ObservableSeries& series, const Orbits& orbits,
                                            std::size_t window, std::size_t end) {
  if (end >= series.size()) throw std::invalid_argument("dispersion: window end beyond history");
  check_window(window, end + 1);
  return dispersion_over(series, coupler_groups(orbits), window, end);
}

Dispersion dispersion(const ObservableSeries& series, const Orbits& orbits, std::size_t window) {
  check_window(window, series.size());
  const auto groups = coupler_groups(orbits);
  Dispersion out;
  out.first_iteration = window - 1;
  for (std::size_t end = window - 1; end < series.size(); ++end) {
    const auto [sm, sf] = dispersion_over(series, groups, window, end);
    out.sigma_m.push_back(sm);
    out.sigma_f.push_back(sf);
  }
  return out;
}

SublatticeColoring three_coloring(const IsingModel& logical) {
  const int n = logical.num_spins();
  if (n == 0) return {};
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const auto& c : logical.couplings()) {
    adj[c.i].insert(c.j);
    adj[c.j].insert(c.i);
  }
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  color[0] = 0;
  if (adj[0].empty()) {
    if (n == 1) return {color};
    throw std::invalid_argument("three_coloring: spin 0 has no neighbours");
  }
  color[*adj[0].begin()] = 1;

  // Each coloured edge may colour the apexes of the triangles over it.
  std::queue<std::pair<int, int>> edges;
  edges.push({0, *adj[0].begin()});
  while (!edges.empty()) {
    const auto [a, b] = edges.front();
    edges.pop();
    for (int c : adj[a]) {
      if (!adj[b].contains(c)) continue;
      const int want = 3 - color[a] - color[b];
      if (color[c] == -1) {
        color[c] = want;
        edges.push({a, c});
        edges.push({b, c});
      } else if (color[c] != want) {
        throw std::invalid_argument("three_coloring: lattice rule gives conflicting colours at spin " +
                                    std::to_string(c));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (color[i] == -1) {
      throw std::invalid_argument("three_coloring: spin " + std::to_string(i) +
                                  " is not reachable through triangles");
    }
  }
  SublatticeColoring coloring{std::move(color)};
  if (!is_proper_coloring(logical, coloring)) {
    throw std::invalid_argument("three_coloring: result is not a proper colouring");
  }
  return coloring;
}

bool is_proper_coloring(const IsingModel& model, const SublatticeColoring& coloring) {
  if (coloring.color.size() != static_cast<std::size_t>(model.num_spins())) return false;
  for (int c : coloring.color) {
    if (c < 0 || c > 2) return false;
  }
  return std::ranges::none_of(model.couplings(),
                              [&](const Coupling& c) { return coloring.color[c.i] == coloring.color[c.j]; });
}

SampleSet decode_chains(const SampleSet& physical, std::span<const int> logical_of, int num_logical) {
  if (logical_of.size() != static_cast<std::size_t>(physical.num_spins())) {
    throw std::invalid_argument("decode_chains: chain map does not match sample width");
  }
  std::vector<int> first(static_cast<std::size_t>(num_logical), -1);
  for (std::size_t p = 0; p < logical_of.size(); ++p) {
    const int l = logical_of[p];
    if (l < 0 || l >= num_logical) throw std::invalid_argument("decode_chains: logical index out of range");
    if (first[l] == -1) first[l] = static_cast<int>(p);
  }
  if (std::ranges::find(first, -1) != first.end()) {
    throw std::invalid_argument("decode_chains: logical spin without physical members");
  }
  SampleSet out(physical.reads(), num_logical);
  out.provenance = physical.provenance;
  std::vector<int> votes(static_cast<std::size_t>(num_logical));
  for (int r = 0; r < physical.reads(); ++r) {
    std::fill(votes.begin(), votes.end(), 0);
    const auto row = physical.read(r);
    for (std::size_t p = 0; p < row.size(); ++p) votes[logical_of[p]] += row[p];
    auto dst = out.read(r);
    for (int l = 0; l < num_logical; ++l) {
      dst[l] = votes[l] > 0 ? Spin{1} : votes[l] < 0 ? Spin{-1} : row[first[l]];
    }
  }
  return out;
}

OrderParameter order_parameter(const SampleSet& logical, const SublatticeColoring& coloring) {
  const int n = logical.num_spins();
  if (coloring.color.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("order_parameter: colouring does not cover the sample width");
  }
  for (int c : coloring.color) {
    if (c < 0 || c > 2) throw std::invalid_argument("order_parameter: colour outside {0,1,2}");
  }
  OrderParameter out;
  if (n == 0) return out;
  const double root3 = std::numbers::sqrt3;
  double total = 0.0;
  for (int r = 0; r < logical.reads(); ++r) {
    long s[3] = {0, 0, 0};
    const auto row = logical.read(r);
    for (int i = 0; i < n; ++i) s[coloring.color[i]] += row[i];
    // Sum over colours of S_c exp(2 pi i c / 3), kept integral until the end.
    const double re = static_cast<double>(2 * s[0] - s[1] - s[2]) / 2.0;
    const double im = root3 / 2.0 * static_cast<double>(s[1] - s[2]);
    const std::complex<double> psi(root3 / n * re, root3 / n * im);
    out.psi.push_back(psi);
    total += std::abs(psi);
  }
  if (logical.reads() > 0) out.mean_abs = total / logical.reads();
  return out;
}

std::optional<double> fit_walk_exponent(std::span<const std::vector<double>> history, std::size_t lookback) {
  if (lookback == 0) throw std::invalid_argument("fit_walk_exponent: lookback must be at least 1");
  if (history.size() < lookback + 1) {
    throw std::invalid_argument("fit_walk_exponent: need " + std::to_string(lookback + 1) +
                                " history entries, have " + std::to_string(history.size()));
  }
  const auto recent = history.last(lookback + 1);
  const std::size_t terms = recent.front().size();
  for (const auto& row : recent) {
    if (row.size() != terms) throw std::invalid_argument("fit_walk_exponent: ragged history");
  }
  if (terms == 0) return std::nullopt;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> diffs;
  for (std::size_t d = 1; d <= lookback; ++d) {
    diffs.clear();
    for (std::size_t t = d; t <= lookback; ++t) {
      for (std::size_t k = 0; k < terms; ++k) diffs.push_back(recent[t][k] - recent[t - d][k]);
    }
    if (std::ranges::all_of(diffs, [&](double x) { return x == diffs.front(); })) return std::nullopt;
    const double sd = population_std(diffs);
    const double var = sd * sd;
    if (!(var > 0.0)) return std::nullopt;
    xs.push_back(std::log(static_cast<double>(d)));
    ys.push_back(std::log(var));
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace isingshim
