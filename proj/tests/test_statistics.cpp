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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "isingshim/model_generators.hpp"
#include "isingshim/orbits.hpp"
#include "isingshim/statistics.hpp"

using namespace isingshim;

namespace {

SampleSet from_rows(const std::vector<std::vector<int>>& rows) {
  SampleSet s(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) s.read(static_cast<int>(r))[i] = static_cast<Spin>(rows[r][i]);
  }
  return s;
}

SampleSet random_reads(std::mt19937_64& rng, int reads, int n) {
  SampleSet s(reads, n);
  for (int r = 0; r < reads; ++r) {
    for (auto& x : s.read(r)) x = (rng() & 1) ? Spin{1} : Spin{-1};
  }
  return s;
}

// Walk histories: history[t][k] for `terms` walkers.
std::vector<std::vector<double>> walks(std::uint64_t seed, int terms, int steps, double drift_sigma,
                                       double step_sigma) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, step_sigma);
  std::normal_distribution<double> velocity(0.0, drift_sigma);
  std::vector<double> v(static_cast<std::size_t>(terms));
  for (auto& x : v) x = velocity(rng);
  std::vector<std::vector<double>> history(static_cast<std::size_t>(steps), std::vector<double>(terms, 0.0));
  for (int t = 1; t < steps; ++t) {
    for (int k = 0; k < terms; ++k) history[t][k] = history[t - 1][k] + v[k] + step(rng);
  }
  return history;
}

}  // namespace

TEST_CASE("magnetizations and frustrations") {
  CHECK(magnetizations(from_rows({{1, 1}, {1, 1}})) == std::vector<double>{1.0, 1.0});
  CHECK(magnetizations(from_rows({{1}, {-1}})) == std::vector<double>{0.0});
  std::vector<std::vector<int>> rows(100, {-1});
  for (int r = 0; r < 75; ++r) rows[r] = {1};
  CHECK(magnetizations(from_rows(rows))[0] == 0.5);

  const IsingModel fm(2, {0, 0}, {{0, 1, -1.0}});
  const IsingModel afm(2, {0, 0}, {{0, 1, 1.0}});
  const auto aligned = from_rows({{1, 1}, {-1, -1}});
  CHECK(frustrations(aligned, fm)[0] == 0.0);
  CHECK(frustrations(aligned, afm)[0] == 1.0);
  std::vector<std::vector<int>> mostly_anti(10, {1, -1});
  mostly_anti[0] = {1, 1};
  CHECK(frustrations(from_rows(mostly_anti), afm)[0] == doctest::Approx(0.1));
  CHECK_THROWS_AS(frustrations(aligned, IsingModel(3)), std::invalid_argument);
}

TEST_CASE("frustration is gauge invariant on every read") {
  std::mt19937_64 rng(8);
  const auto model = make_spin_glass(make_frustrated_loop(9, 1.0), 0.7, 3);
  const auto reads = random_reads(rng, 200, 9);
  for (int trial = 0; trial < 10; ++trial) {
    GaugeTransform gauge;
    for (int i = 0; i < 9; ++i) {
      if (rng() & 1) gauge.flip_set.push_back(i);
    }
    SampleSet gauged_reads(reads.reads(), 9);
    for (int r = 0; r < reads.reads(); ++r) {
      const auto g = apply_gauge(reads.read(r), gauge);
      std::copy(g.begin(), g.end(), gauged_reads.read(r).begin());
    }
    CHECK(frustrations(gauged_reads, apply_gauge(model, gauge)) == frustrations(reads, model));
  }
}

TEST_CASE("orbit means") {
  SUBCASE("zero field gives zero qubit targets") {
    const auto model = make_frustrated_loop(6, 0.5);
    const auto orbits = ising_orbits(model);
    const std::vector<double> m{0.1, -0.2, 0.3, 0.0, 0.05, 0.2};
    const std::vector<double> f{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    const auto means = orbit_means(m, f, orbits);
    for (int i = 0; i < 6; ++i) CHECK(means.qubit_target(orbits, i) == 0.0);
    for (std::size_t k = 0; k < 6; ++k) CHECK(means.coupler_target(orbits, k) == doctest::Approx(0.35));
  }
  SUBCASE("opposite qubit orbits") {
    Orbits orbits;
    orbits.qubit_orbit = {0, 0, 2, 2};
    orbits.opposite_qubit = {{0, 2}, {2, 0}};
    const std::vector<double> m{0.2, 0.4, -0.1, -0.3};
    const auto means = qubit_orbit_means(m, orbits);
    CHECK(means.at(0) == doctest::Approx(0.25));
    CHECK(means.at(2) == doctest::Approx(-0.25));
  }
  SUBCASE("orbit without an opposite averages its members") {
    Orbits orbits;
    orbits.qubit_orbit = {0, 0, 2};
    const std::vector<double> m{0.2, 0.4, -0.1};
    const auto means = qubit_orbit_means(m, orbits);
    CHECK(means.at(0) == doctest::Approx(0.3));
    CHECK(means.at(2) == doctest::Approx(-0.1));
  }
  SUBCASE("singletons are their own targets") {
    const auto model = make_spin_glass(make_fm_loop(5, 1.0), 1.0, 2).with_fields({0.1, 0.2, 0.3, 0.4, 0.5});
    const auto orbits = singleton_orbits(model);
    const std::vector<double> m{0.5, 0.4, 0.3, 0.2, 0.1};
    const std::vector<double> f{0.9, 0.8, 0.7, 0.6, 0.5};
    const auto means = orbit_means(m, f, orbits);
    for (int i = 0; i < 5; ++i) CHECK(means.qubit_target(orbits, i) == m[i]);
    for (std::size_t k = 0; k < 5; ++k) CHECK(means.coupler_target(orbits, k) == f[k]);
  }
  SUBCASE("size mismatch") {
    const auto orbits = ising_orbits(make_fm_loop(4, -1.0));
    const std::vector<double> m(3, 0.0);
    const std::vector<double> f(4, 0.0);
    CHECK_THROWS_AS(orbit_means(m, f, orbits), std::invalid_argument);
  }
}

TEST_CASE("dispersion") {
  Orbits orbits;
  orbits.qubit_orbit = {0, 0, 0};
  orbits.coupler_orbit = {0, 0, 2, 2};
  ObservableSeries series;
  for (int t = 0; t < 4; ++t) {
    series.magnetization.push_back({0.3, 0.3, 0.3});
    series.frustration.push_back({0.4, 0.6, 0.0, 0.0});
  }
  auto d = dispersion(series, orbits, 2);
  CHECK(d.first_iteration == 1);
  REQUIRE(d.sigma_m.size() == 3);
  for (double s : d.sigma_m) CHECK(s == 0.0);
  for (double s : d.sigma_f) CHECK(s == doctest::Approx(0.05));

  orbits.coupler_orbit = {0, 0};
  series.frustration.assign(4, {0.4, 0.6});
  CHECK(dispersion(series, orbits, 1).sigma_f[0] == doctest::Approx(0.1));

  // Moving mean: alternating values average out over a window of two.
  orbits.qubit_orbit = {0, 0};
  series.magnetization = {{1.0, -1.0}, {-1.0, 1.0}, {1.0, -1.0}, {-1.0, 1.0}};
  CHECK(dispersion(series, orbits, 1).sigma_m[0] == 1.0);
  CHECK(dispersion(series, orbits, 2).sigma_m[0] == 0.0);

  CHECK_THROWS_AS(dispersion(series, orbits, 0), std::invalid_argument);
  CHECK_THROWS_AS(dispersion(series, orbits, 5), std::invalid_argument);
}

TEST_CASE("three colouring") {
  const IsingModel triangle(3, {0, 0, 0}, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const auto c = three_coloring(triangle);
  CHECK(c.color == std::vector<int>{0, 1, 2});

  for (int size : {6, 12}) {
    const auto cyl = make_square_cylinder(size, size, 1.0);
    const auto logical = contract_chains(cyl.model, cyl.chain_pairs).logical;
    const auto coloring = three_coloring(logical);
    CHECK(is_proper_coloring(logical, coloring));
    int counts[3] = {0, 0, 0};
    for (int x : coloring.color) ++counts[x];
    for (int k = 0; k < 3; ++k) CHECK(counts[k] * 3 == logical.num_spins());
    CHECK(three_coloring(logical).color == coloring.color);
  }

  auto bad = c;
  bad.color[2] = 0;
  CHECK_FALSE(is_proper_coloring(triangle, bad));
  const IsingModel square(4, {0, 0, 0, 0}, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
  CHECK_THROWS_AS(three_coloring(square), std::invalid_argument);
  // K4 contains triangles but is not three-colourable.
  const IsingModel k4(4, {0, 0, 0, 0},
                      {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(three_coloring(k4), std::invalid_argument);
}

TEST_CASE("chain decoding") {
  const std::vector<int> logical_of{0, 0, 1, 1, 2};
  const auto physical = from_rows({{1, 1, -1, -1, 1}, {1, -1, -1, 1, -1}, {-1, 1, 1, -1, 1}});
  const auto logical = decode_chains(physical, logical_of, 3);
  CHECK(logical.at(0, 0) == 1);
  CHECK(logical.at(0, 1) == -1);
  CHECK(logical.at(0, 2) == 1);
  CHECK(logical.at(1, 0) == 1);
  CHECK(logical.at(1, 1) == -1);
  CHECK(logical.at(2, 0) == -1);
  CHECK(logical.at(2, 1) == 1);

  const std::vector<int> triple{0, 0, 0};
  CHECK(decode_chains(from_rows({{-1, 1, 1}}), triple, 1).at(0, 0) == 1);
  const std::vector<int> missing{0, 0};
  CHECK_THROWS_AS(decode_chains(from_rows({{1, 1}}), missing, 2), std::invalid_argument);
}

TEST_CASE("order parameter") {
  const SublatticeColoring coloring{{0, 1, 2, 0, 1, 2}};
  const auto all_up = order_parameter(from_rows({{1, 1, 1, 1, 1, 1}}), coloring);
  CHECK(std::abs(all_up.psi[0]) < 1e-15);

  const auto ordered = order_parameter(from_rows({{1, -1, -1, 1, -1, -1}}), coloring);
  CHECK(std::abs(ordered.psi[0]) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(ordered.mean_abs == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));

  // Direct evaluation of the defining sum.
  std::mt19937_64 rng(4);
  const auto reads = random_reads(rng, 50, 6);
  const auto psi = order_parameter(reads, coloring).psi;
  const std::complex<double> i_unit(0.0, 1.0);
  for (int r = 0; r < reads.reads(); ++r) {
    std::complex<double> sum = 0.0;
    for (int l = 0; l < 6; ++l) {
      sum += static_cast<double>(reads.at(r, l)) *
             std::exp(i_unit * (2.0 * std::numbers::pi * coloring.color[l] / 3.0));
    }
    sum *= std::sqrt(3.0) / 6.0;
    CHECK(std::abs(psi[r] - sum) < 1e-12);
  }

  SampleSet flipped(reads.reads(), 6);
  SublatticeColoring rotated{{1, 2, 0, 1, 2, 0}};
  for (int r = 0; r < reads.reads(); ++r) {
    for (int l = 0; l < 6; ++l) flipped.read(r)[l] = static_cast<Spin>(-reads.at(r, l));
  }
  const auto neg = order_parameter(flipped, coloring).psi;
  const auto rot = order_parameter(reads, rotated).psi;
  const auto omega = std::exp(i_unit * (2.0 * std::numbers::pi / 3.0));
  for (int r = 0; r < reads.reads(); ++r) {
    CHECK(neg[r] == -psi[r]);
    CHECK(std::abs(rot[r] - omega * psi[r]) < 1e-12);
  }
  CHECK_THROWS_AS(order_parameter(reads, SublatticeColoring{{0, 1, 2}}), std::invalid_argument);
}

TEST_CASE("walk exponent") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto unbiased = walks(seed, 1000, 21, 0.0, 1.0);
    const auto b = fit_walk_exponent(unbiased, 20);
    REQUIRE(b.has_value());
    CHECK(*b >= 0.9);
    CHECK(*b <= 1.1);
  }
  const auto drifting = walks(5, 1000, 21, 1.0, 0.2);
  CHECK(*fit_walk_exponent(drifting, 20) > 1.1);

  std::mt19937_64 rng(6);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<std::vector<double>> oscillating(21, std::vector<double>(100));
  for (int t = 0; t < 21; ++t) {
    for (int k = 0; k < 100; ++k) oscillating[t][k] = (t % 2 ? 1.0 : -1.0) * (1.0 + 0.01 * k) + noise(rng);
  }
  CHECK(*fit_walk_exponent(oscillating, 20) < 0.9);

  auto scaled = walks(7, 50, 30, 0.1, 1.0);
  const double b0 = *fit_walk_exponent(scaled, 20);
  for (auto& row : scaled) {
    for (auto& x : row) x *= 37.5;
  }
  CHECK(std::abs(*fit_walk_exponent(scaled, 20) - b0) < 1e-9);

  const std::vector<std::vector<double>> constant(21, std::vector<double>{1.0, 2.0});
  CHECK_FALSE(fit_walk_exponent(constant, 20).has_value());
  CHECK_THROWS_AS(fit_walk_exponent(constant, 21), std::invalid_argument);
}
