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

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "isingshim/ising_model.hpp"
#include "isingshim/orbits.hpp"
#include "isingshim/sampler.hpp"

namespace isingshim {

// Column means <s_i>.
std::vector<double> magnetizations(const SampleSet& samples);

// (1 + sign(J_ij) <s_i s_j>) / 2 per coupling of `model`.
std::vector<double> frustrations(const SampleSet& samples, const IsingModel& model);

// Orbit targets. A self-opposite qubit orbit has mean 0; an opposite pair
// (O, -O) shares one magnitude, m_O = (sum_O m - sum_-O m) / (|O| + |-O|)
// and m_-O = -m_O. Coupler orbits average f over O and its opposite.
struct OrbitMeans {
  std::map<int, double> qubit;
  std::map<int, double> coupler;

  double qubit_target(const Orbits& orbits, int spin) const { return qubit.at(orbits.qubit_orbit.at(spin)); }
  double coupler_target(const Orbits& orbits, std::size_t k) const {
    return coupler.at(orbits.coupler_orbit.at(k));
  }
};

OrbitMeans orbit_means(std::span<const double> m, std::span<const double> f, const Orbits& orbits);
std::map<int, double> qubit_orbit_means(std::span<const double> m, const Orbits& orbits);
std::map<int, double> coupler_orbit_means(std::span<const double> f, const Orbits& orbits);

// Couplers grouped with their opposite orbit, as used for coupler targets
// and for the frustration dispersion. Each group is sorted.
std::vector<std::vector<std::size_t>> coupler_groups(const Orbits& orbits);

// Per-iteration record of observables and shimmed terms.
struct ObservableSeries {
  std::vector<std::vector<double>> magnetization;
  std::vector<std::vector<double>> frustration;
  std::vector<std::vector<double>> fbo;
  std::vector<std::vector<double>> couplings;
  std::vector<std::vector<double>> fields;

  std::size_t size() const noexcept { return magnetization.size(); }
};

// Moving-mean dispersions. Entry k describes the window ending at iteration
// first_iteration + k: sigma_m is the population std across qubits of the
// window-averaged m_i; sigma_f is the population std of the window-averaged
// f within each coupler group, averaged over groups.
struct Dispersion {
  std::size_t first_iteration = 0;
  std::vector<double> sigma_m;
  std::vector<double> sigma_f;
};

// Throws std::invalid_argument when window is 0 or longer than the series.
Dispersion dispersion(const ObservableSeries& series, const Orbits& orbits, std::size_t window = 10);

// sigma_m and sigma_f of the single window ending at iteration `end`.
std::pair<double, double> window_dispersion(const ObservableSeries& series, const Orbits& orbits,
                                            std::size_t window, std::size_t end);

double population_std(std::span<const double> values);

// Proper colouring with colours {0, 1, 2}.
struct SublatticeColoring {
  std::vector<int> color;
};

// Colours a triangulated model by propagation across triangles: spin 0 gets
// colour 0, its smallest neighbour colour 1, and any spin closing a triangle
// over two coloured spins the remaining colour. Throws std::invalid_argument
// if some spin is unreachable this way or the result is not proper.
SublatticeColoring three_coloring(const IsingModel& logical);

bool is_proper_coloring(const IsingModel& model, const SublatticeColoring& coloring);

// Logical spins from physical reads. Each logical spin takes the majority of
// its physical members; ties go to the smallest physical member.
SampleSet decode_chains(const SampleSet& physical, std::span<const int> logical_of, int num_logical);

// psi(S) = (sqrt 3 / N) sum_l s_l exp(2 pi i c_l / 3), one value per read.
struct OrderParameter {
  std::vector<std::complex<double>> psi;
  double mean_abs = 0.0;
};

OrderParameter order_parameter(const SampleSet& logical, const SublatticeColoring& coloring);

// Exponent b of var(X_d) ~ d^b, d = 1..lookback, where X_d pools
// x(t) - x(t - d) over every term and every t in the last lookback + 1
// entries of `history` (one vector of term values per iteration). Variance
// is the population variance; b is the least-squares slope in log-log
// coordinates. Empty when some var(X_d) is zero.
std::optional<double> fit_walk_exponent(std::span<const std::vector<double>> history,
                                        std::size_t lookback = 20);

}  // namespace isingshim
