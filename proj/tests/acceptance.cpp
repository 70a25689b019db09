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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isingshim/automorphism.hpp"
#include "isingshim/cli.hpp"
#include "isingshim/embedding.hpp"
#include "isingshim/experiments.hpp"
#include "isingshim/format.hpp"
#include "isingshim/hardware.hpp"
#include "isingshim/model_generators.hpp"
#include "isingshim/orbits.hpp"
#include "isingshim/sampler.hpp"
#include "isingshim/seeding.hpp"
#include "isingshim/shim.hpp"
#include "isingshim/statistics.hpp"
#include "oracles.hpp"

using namespace isingshim;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

double median(std::vector<double> values) {
  std::ranges::sort(values);
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : " ") + fixed(v, 3);
  return out;
}

Verdict orbit_counts() {
  Verdict v;
  for (int length : {4, 16, 64}) {
    const auto o = ising_orbits(make_fm_loop(length, -1.0));
    v.require(o.num_qubit_orbits() == 1 && o.num_coupler_orbits() == 1, "fm loop " + std::to_string(length));
  }
  for (int length : {3, 16}) {
    const auto model = make_frustrated_loop(length, -0.9);
    const auto o = ising_orbits(model);
    const bool counts = o.num_qubit_orbits() == 1 && o.num_coupler_orbits() == 2;
    const int a = o.coupler_orbit[0];
    const int b = o.coupler_orbit[1];
    v.require(counts && a != b && o.opposite_of_coupler_orbit(a) == b && o.opposite_of_coupler_orbit(b) == a,
              "frustrated loop " + std::to_string(length));
  }
  const auto bucky = ising_orbits(make_buckyball());
  v.require(bucky.num_qubit_orbits() == 1 && bucky.num_coupler_orbits() == 2, "buckyball");
  if (v.pass) v.detail = "fm 1+1, frustrated 1+2 opposite, buckyball 1+2";
  return v;
}

Verdict orbit_soundness() {
  Verdict v;
  std::mt19937_64 rng(2718);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto model = oracle::random_model(rng, 10);
    const auto orbits = ising_orbits(model);
    for (double beta : {0.5, 1.0, 2.0}) worst = std::max(worst, oracle::orbit_violation(model, orbits, beta));
  }
  v.require(worst <= 1e-10, "violation " + format_double(worst));
  if (v.pass) v.detail = "200 models, worst violation " + format_double(worst);
  return v;
}

Verdict automorphism_brute_force() {
  Verdict v;
  std::mt19937_64 rng(31415);
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_labeled_graph(rng);
    const auto orbits = vertex_and_edge_orbits(g, automorphism_generators(g));
    if (orbits.vertex_orbit != oracle::brute_force_orbits(g)) ++mismatches;
  }
  v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  if (v.pass) v.detail = "100 graphs, 0 mismatches";
  return v;
}

// Window (10 iterations) dispersion ending at `end`.
double sigma_at(const ObservableSeries& series, const Orbits& orbits, std::size_t end, bool coupler) {
  const auto [m, f] = window_dispersion(series, orbits, 10, end);
  return coupler ? f : m;
}

Verdict fbo_efficacy() {
  Verdict v;
  std::vector<double> ratios;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto config = make_preset("fm_loop_correlations", false);
    config.copies = 1;
    config.seed = seed;
    const auto out = run_experiment(config);
    const auto& series = out.run.state.history;
    const auto& orbits = out.prepared.problem.orbits;
    const double before = sigma_at(series, orbits, 99, false);
    const double after = sigma_at(series, orbits, series.size() - 1, false);
    ratios.push_back(after / before);
  }
  const double med = median(ratios);
  v.require(med <= 0.3, "median ratio " + fixed(med, 3));
  v.detail = "sigma_m final/pre ratios " + join(ratios) + ", median " + fixed(med, 3);
  return v;
}

// Criteria 5 and 6 share the runs.
struct CouplerRuns {
  std::vector<double> ratios;
  std::vector<ObservableSeries> histories;
  std::vector<Orbits> orbits;
};

CouplerRuns coupler_runs() {
  CouplerRuns runs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto config = make_preset("frustrated_loop", false);
    config.noise.gain_sigma = 0.1;
    config.seed = seed;
    const auto out = run_experiment(config);
    const auto& series = out.run.state.history;
    const auto& orbits = out.prepared.problem.orbits;
    const double before = sigma_at(series, orbits, 199, true);
    const double after = sigma_at(series, orbits, series.size() - 1, true);
    runs.ratios.push_back(after / before);
    runs.histories.push_back(series);
    runs.orbits.push_back(orbits);
  }
  return runs;
}

Verdict coupler_efficacy(const CouplerRuns& runs) {
  Verdict v;
  const double med = median(runs.ratios);
  v.require(med <= 0.5, "median ratio " + fixed(med, 3));
  v.detail = "sigma_f final/pre ratios " + join(runs.ratios) + ", median " + fixed(med, 3);
  return v;
}

Verdict renormalization(const CouplerRuns& runs) {
  Verdict v;
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t k = 0; k < runs.histories.size(); ++k) {
    const auto& orbits = runs.orbits[k];
    for (const auto& row : runs.histories[k].couplings) {
      bool clamped = false;
      for (double j : row) {
        v.require(j >= -2.0 && j <= 1.0, "coupling out of range " + format_double(j));
        clamped = clamped || j == -2.0 || j == 1.0;
      }
      if (clamped) continue;
      std::map<int, std::pair<double, int>> sums;
      for (std::size_t c = 0; c < row.size(); ++c) {
        auto& s = sums[orbits.coupler_orbit[c]];
        s.first += std::abs(row[c]);
        ++s.second;
      }
      for (const auto& [orbit, s] : sums) worst = std::max(worst, std::abs(s.first / s.second - 0.9));
      ++checked;
    }
  }
  v.require(worst <= 1e-9, "mean |J| deviation " + format_double(worst));
  if (v.pass) v.detail = std::to_string(checked) + " iterations, worst deviation " + format_double(worst);
  return v;
}

std::vector<std::vector<double>> walks(std::uint64_t seed, double drift_sigma, bool oscillate) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> velocity(1000);
  for (auto& x : velocity) x = drift_sigma * normal(rng);
  std::vector<std::vector<double>> history(21, std::vector<double>(1000, 0.0));
  for (int t = 0; t < 21; ++t) {
    for (int k = 0; k < 1000; ++k) {
      if (oscillate) {
        history[t][k] = (t % 2 ? 1.0 : -1.0) * (1.0 + 0.5 * std::abs(velocity[k])) + 0.05 * normal(rng);
      } else if (t > 0) {
        history[t][k] = history[t - 1][k] + velocity[k] + normal(rng);
      }
    }
  }
  return history;
}

Verdict walk_exponent() {
  Verdict v;
  std::vector<double> seen;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto unbiased = fit_walk_exponent(walks(seed, 0.0, false), 20);
    const auto drifting = fit_walk_exponent(walks(seed, 2.0, false), 20);
    const auto oscillating = fit_walk_exponent(walks(seed, 1.0, true), 20);
    v.require(unbiased && *unbiased >= 0.9 && *unbiased <= 1.1, "unbiased seed " + std::to_string(seed));
    v.require(drifting && *drifting > 1.1, "drifting seed " + std::to_string(seed));
    v.require(oscillating && *oscillating < 0.9, "oscillating seed " + std::to_string(seed));
    if (unbiased && drifting && oscillating) seen.insert(seen.end(), {*unbiased, *drifting, *oscillating});
  }
  if (v.pass) v.detail = "b (unbiased, drifting, oscillating) x 3 seeds: " + join(seen);
  return v;
}

Verdict psi_identities() {
  Verdict v;
  const auto cylinder = make_square_cylinder(6, 6, 0.9);
  const auto logical = contract_chains(cylinder.model, cylinder.chain_pairs).logical;
  const auto coloring = three_coloring(logical);
  const int n = logical.num_spins();
  auto psi_of = [&](const std::vector<Spin>& state) {
    SampleSet set(1, n);
    std::ranges::copy(state, set.read(0).begin());
    return order_parameter(set, coloring).psi[0];
  };
  auto pure = [&](std::array<int, 3> signs) {
    std::vector<Spin> state(n);
    for (int i = 0; i < n; ++i) state[i] = static_cast<Spin>(signs[coloring.color[i]]);
    return state;
  };

  v.require(psi_of(std::vector<Spin>(n, 1)) == std::complex<double>(0.0, 0.0), "psi(all up) != 0");

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Spin> state(n);
    for (auto& s : state) s = (rng() & 1) ? Spin{1} : Spin{-1};
    auto flipped = state;
    for (auto& s : flipped) s = static_cast<Spin>(-s);
    v.require(psi_of(flipped) == -psi_of(state), "flip does not negate psi");
  }

  const std::complex<double> omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  for (int mask = 0; mask < 8; ++mask) {
    const std::array<int, 3> s{mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1};
    // Sublattice c takes the value of sublattice c - 1.
    const std::array<int, 3> rotated{s[2], s[0], s[1]};
    v.require(std::abs(psi_of(pure(rotated)) - omega * psi_of(pure(s))) <= 1e-12, "rotation");
  }
  const double pure_abs = std::abs(psi_of(pure({1, -1, -1})));
  v.require(std::abs(pure_abs - 2.0 / std::sqrt(3.0)) <= 1e-12, "|psi(+,-,-)| = " + format_double(pure_abs));
  if (v.pass) v.detail = "6x6 cylinder, |psi(+,-,-)| = " + format_double(pure_abs);
  return v;
}

Verdict gauge_invariance() {
  Verdict v;
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto model = oracle::random_model(rng, 10);
    GaugeTransform gauge;
    for (int i = 0; i < model.num_spins(); ++i) {
      if (rng() & 1) gauge.flip_set.push_back(i);
    }
    const auto gauged = apply_gauge(model, gauge);
    for (int r = 0; r < 20; ++r) {
      std::vector<Spin> state(model.num_spins());
      for (auto& s : state) s = (rng() & 1) ? Spin{1} : Spin{-1};
      const auto moved = apply_gauge(state, gauge);
      for (std::size_t k = 0; k < model.num_couplings(); ++k) {
        const auto& a = model.couplings()[k];
        const auto& b = gauged.couplings()[k];
        v.require(frustration_indicator(a.value, state[a.i], state[a.j]) ==
                      frustration_indicator(b.value, moved[b.i], moved[b.j]),
                  "indicator changed under gauge");
      }
    }
  }

  const auto model = make_frustrated_loop(8, 0.6);
  NoiseModel noise = generate_noise(interaction_graph(model), {}, 4);
  const GaugeTransform gauge{{0, 3, 4, 6}};
  const auto gauged = apply_gauge(model, gauge);
  NoiseModel gauged_noise = noise;
  for (int i : gauge.flip_set) gauged_noise.qubit_offset[i] = -gauged_noise.qubit_offset[i];
  SamplerParams params;
  params.reads = 4000;
  params.sweeps = 100;
  params.seed = 99;
  const auto f = frustrations(sample(model, {}, noise, params), model);
  const auto g = frustrations(sample(gauged, {}, gauged_noise, params), gauged);
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double p = (f[k] + g[k]) / 2;
    const double sigma = std::sqrt(2.0 * std::max(p * (1 - p), 1.0 / params.reads) / params.reads);
    worst = std::max(worst, std::abs(f[k] - g[k]) / sigma);
  }
  v.require(worst <= 3.0, "sampler deviation " + fixed(worst, 2) + " sigma");
  if (v.pass) v.detail = "indicators exact, sampler worst " + fixed(worst, 2) + " sigma";
  return v;
}

Verdict embedding_validity() {
  Verdict v;
  const auto hw = parse_hardware("pegasus:16");
  const auto loop16 = make_frustrated_loop(16, -0.9);
  const auto packed = raster_embed(loop16, hw);
  auto check = [&](const EmbeddingSet& set, const IsingModel& pattern, const std::string& name) {
    std::set<int> used;
    for (const auto& map : set.maps) {
      for (const auto& c : pattern.couplings()) {
        v.require(hw.graph.has_edge(map[c.i], map[c.j]), name + " coupler off hardware");
      }
      for (int q : map) v.require(used.insert(q).second, name + " copies overlap");
    }
  };
  check(packed, loop16, "16-loop");
  v.require(packed.size() >= 50, "only " + std::to_string(packed.size()) + " copies");
  const auto loop64 = make_fm_loop(64, -1.0);
  const auto big = raster_embed(loop64, hw);
  check(big, loop64, "64-loop");
  v.require(big.size() >= 2, "64-loop copies " + std::to_string(big.size()));
  if (v.pass) {
    v.detail = std::to_string(packed.size()) + " copies of the 16-loop, " + std::to_string(big.size()) +
               " of the 64-loop";
  }
  return v;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict determinism() {
  Verdict v;
  const auto root = fs::temp_directory_path() / "isingshim_acceptance";
  fs::remove_all(root);
  std::vector<std::string> digests;
  for (const char* name : {"a", "b"}) {
    cli::RunArgs args;
    args.experiment = "tafm_forward_anneal";
    args.seed = 42;
    args.iterations = 20;
    args.out_dir = (root / name).string();
    std::ostringstream sink;
    v.require(cli::cmd_run(args, sink) == 0, "cmd_run failed");
  }
  for (const char* file : {"series.csv", "psi.csv"}) {
    const auto a = slurp(root / "a" / file);
    const auto b = slurp(root / "b" / file);
    v.require(!a.empty() && a == b, std::string(file) + " differs");
  }
  if (v.pass) v.detail = "series.csv and psi.csv identical";
  fs::remove_all(root);
  return v;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int number, const char* title, const std::function<Verdict()>& check) {
    const auto start = std::chrono::steady_clock::now();
    Verdict verdict;
    try {
      verdict = check();
    } catch (const std::exception& e) {
      verdict = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!verdict.pass) ++failures;
    std::printf("%s criterion %2d: %s: %s (%.1f s)\n", verdict.pass ? "PASS" : "FAIL", number, title,
                verdict.detail.c_str(), seconds);
    std::fflush(stdout);
  };

  report(1, "orbit counts", orbit_counts);
  report(2, "orbit soundness", orbit_soundness);
  report(3, "automorphisms vs brute force", automorphism_brute_force);
  report(4, "fbo shim efficacy", fbo_efficacy);
  CouplerRuns runs;
  report(5, "coupler shim efficacy", [&] {
    runs = coupler_runs();
    return coupler_efficacy(runs);
  });
  report(6, "renormalization", [&] {
    if (runs.histories.empty()) return Verdict{false, "no coupler runs"};
    return renormalization(runs);
  });
  report(7, "walk exponent calibration", walk_exponent);
  report(8, "order parameter identities", psi_identities);
  report(9, "gauge invariance", gauge_invariance);
  report(10, "embedding validity", embedding_validity);
  report(11, "determinism", determinism);
  return failures == 0 ? 0 : 1;
}
