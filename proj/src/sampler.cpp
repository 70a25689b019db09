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

#include "isingshim/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "isingshim/seeding.hpp"

namespace isingshim {

namespace {

// Compressed adjacency for the sweep loop.
struct SweepModel {
  std::vector<double> field;
  std::vector<int> start;
  std::vector<int> neighbour;
  std::vector<double> coupling;

  explicit SweepModel(const IsingModel& model) : field(model.fields().begin(), model.fields().end()) {
    const int n = model.num_spins();
    std::vector<int> degree(n, 0);
    for (const auto& c : model.couplings()) {
      ++degree[c.i];
      ++degree[c.j];
    }
    start.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) start[i + 1] = start[i] + degree[i];
    neighbour.resize(static_cast<std::size_t>(start[n]));
    coupling.resize(neighbour.size());
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (const auto& c : model.couplings()) {
      neighbour[fill[c.i]] = c.j;
      coupling[fill[c.i]++] = c.value;
      neighbour[fill[c.j]] = c.i;
      coupling[fill[c.j]++] = c.value;
    }
  }
};

double unit_double(SplitMix64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// u < exp(-x), deciding most draws from the bounds 1 - x <= exp(-x) <= 1 / (1 + x).
bool accept(double x, double u) {
  if (u < 1.0 - x) return true;
  if (u * (1.0 + x) >= 1.0) return false;
  return u < std::exp(-x);
}

void anneal_read(const SweepModel& m, std::span<Spin> spins, std::span<const double> betas,
                 std::uint64_t seed) {
  SplitMix64 rng(seed);
  for (auto& s : spins) s = (rng() >> 63) ? Spin{1} : Spin{-1};
  const int n = static_cast<int>(spins.size());
  for (double beta : betas) {
    for (int i = 0; i < n; ++i) {
      double local = m.field[i];
      for (int k = m.start[i]; k < m.start[i + 1]; ++k) local += m.coupling[k] * spins[m.neighbour[k]];
      // Energy change of flipping spin i.
      const double delta = -2.0 * spins[i] * local;
      if (delta <= 0.0 || accept(beta * delta, unit_double(rng))) spins[i] = static_cast<Spin>(-spins[i]);
    }
  }
}

std::vector<double> geometric_schedule(double beta_initial, double beta_final, int sweeps) {
  std::vector<double> betas(static_cast<std::size_t>(sweeps));
  for (int k = 0; k < sweeps; ++k) {
    const double frac = sweeps == 1 ? 1.0 : static_cast<double>(k) / (sweeps - 1);
    betas[k] = beta_initial * std::pow(beta_final / beta_initial, frac);
  }
  return betas;
}

SampleSet run_reads(const IsingModel& model, std::span<const double> betas, int reads,
                    std::uint64_t seed, int threads) {
  const SweepModel sweep_model(model);
  SampleSet out(reads, model.num_spins());
  auto work = [&](int first, int last) {
    for (int r = first; r < last; ++r) anneal_read(sweep_model, out.read(r), betas, derive_seed(seed, r));
  };
  const int workers = std::clamp(threads, 1, reads);
  if (workers == 1) {
    work(0, reads);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, reads * w / workers, reads * (w + 1) / workers);
  }
  return out;
}

}  // namespace

double NoiseModel::gain(int i, int j) const {
  auto it = coupler_gain.find({std::min(i, j), std::max(i, j)});
  return it == coupler_gain.end() ? 0.0 : it->second;
}

void NoiseModel::validate() const {
  if (!(fbo_scale > 0.0)) throw std::invalid_argument("fbo_scale must be positive");
  if (!(drift_sigma >= 0.0)) throw std::invalid_argument("drift_sigma must be non-negative");
  for (const auto& [pair, g] : coupler_gain) {
    if (!(std::abs(g) < 1.0)) throw std::invalid_argument("coupler gain magnitude must be below 1");
  }
}

NoiseModel NoiseModel::restrict_to(std::span<const int> hardware_qubit) const {
  NoiseModel out = *this;
  out.qubit_offset.assign(hardware_qubit.size(), 0.0);
  out.coupler_gain.clear();
  std::map<int, int> local;
  for (std::size_t k = 0; k < hardware_qubit.size(); ++k) {
    const int q = hardware_qubit[k];
    if (q >= 0 && static_cast<std::size_t>(q) < qubit_offset.size()) out.qubit_offset[k] = qubit_offset[q];
    local[q] = static_cast<int>(k);
  }
  for (const auto& [pair, g] : coupler_gain) {
    auto a = local.find(pair.first);
    auto b = local.find(pair.second);
    if (a == local.end() || b == local.end()) continue;
    out.coupler_gain[{std::min(a->second, b->second), std::max(a->second, b->second)}] = g;
  }
  return out;
}

void NoiseModel::drift() {
  std::mt19937_64 rng(derive_seed(seed, ++drift_steps));
  std::normal_distribution<double> step(0.0, drift_sigma);
  for (auto& x : qubit_offset) x += step(rng);
}

std::string NoiseModel::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["qubit_offset"] = qubit_offset;
  auto gains = nlohmann::ordered_json::array();
  for (const auto& [pair, g] : coupler_gain) gains.push_back({pair.first, pair.second, g});
  doc["coupler_gain"] = gains;
  doc["crosstalk_kappa"] = crosstalk_kappa;
  doc["fbo_scale"] = fbo_scale;
  doc["drift_sigma"] = drift_sigma;
  doc["seed"] = seed;
  doc["drift_steps"] = drift_steps;
  return doc.dump(1) + "\n";
}

NoiseModel NoiseModel::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  NoiseModel out;
  out.qubit_offset = doc.value("qubit_offset", std::vector<double>{});
  for (const auto& row : doc.value("coupler_gain", nlohmann::json::array())) {
    const int i = row.at(0).get<int>();
    const int j = row.at(1).get<int>();
    out.coupler_gain[{std::min(i, j), std::max(i, j)}] = row.at(2).get<double>();
  }
  out.crosstalk_kappa = doc.value("crosstalk_kappa", 0.0);
  out.fbo_scale = doc.value("fbo_scale", kDefaultFboScale);
  out.drift_sigma = doc.value("drift_sigma", 0.0);
  out.seed = doc.value("seed", std::uint64_t{0});
  out.drift_steps = doc.value("drift_steps", std::uint64_t{0});
  out.validate();
  return out;
}

void NoiseSpec::validate() const {
  for (double sigma : {offset_sigma, gain_sigma, drift_sigma}) {
    if (!std::isfinite(sigma) || sigma < 0.0) throw std::invalid_argument("noise sigma must be finite and >= 0");
  }
  if (!std::isfinite(crosstalk_kappa)) throw std::invalid_argument("crosstalk kappa must be finite");
  if (!(fbo_scale > 0.0) || !std::isfinite(fbo_scale)) throw std::invalid_argument("fbo_scale must be positive");
}

NoiseModel generate_noise(const Graph& graph, const NoiseSpec& spec, std::uint64_t seed) {
  spec.validate();
  NoiseModel out;
  out.crosstalk_kappa = spec.crosstalk_kappa;
  out.fbo_scale = spec.fbo_scale;
  out.drift_sigma = spec.drift_sigma;
  out.seed = seed;
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::normal_distribution<double> offset(0.0, spec.offset_sigma);
  std::normal_distribution<double> gain(0.0, spec.gain_sigma);
  out.qubit_offset.resize(static_cast<std::size_t>(graph.num_vertices()));
  for (auto& x : out.qubit_offset) x = offset(rng);
  for (auto edge : graph.edges()) out.coupler_gain[edge] = std::clamp(gain(rng), -0.99, 0.99);
  out.validate();
  return out;
}

void SamplerParams::validate() const {
  if (reads < 1) throw std::invalid_argument("reads must be >= 1");
  if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
  if (!(beta_initial > 0.0) || !(beta_initial <= beta_final)) {
    throw std::invalid_argument("need 0 < beta_initial <= beta_final");
  }
}

SampleSet::SampleSet(int reads, int num_spins)
    : reads_(reads), num_spins_(num_spins), data_(static_cast<std::size_t>(reads) * num_spins, Spin{1}) {}

std::span<const Spin> SampleSet::read(int r) const {
  return std::span<const Spin>(data_).subspan(static_cast<std::size_t>(r) * num_spins_, num_spins_);
}

std::span<Spin> SampleSet::read(int r) {
  return std::span<Spin>(data_).subspan(static_cast<std::size_t>(r) * num_spins_, num_spins_);
}

IsingModel effective_model(const IsingModel& model, std::span<const double> fbos,
                           const NoiseModel& noise, const IsingModel* crosstalk_reference) {
  const int n = model.num_spins();
  if (!fbos.empty() && static_cast<int>(fbos.size()) != n) throw std::invalid_argument("fbo length mismatch");
  if (!noise.qubit_offset.empty() && static_cast<int>(noise.qubit_offset.size()) != n) {
    throw std::invalid_argument("noise offset length mismatch");
  }
  const IsingModel& reference = crosstalk_reference != nullptr ? *crosstalk_reference : model;
  if (reference.num_spins() != n) throw std::invalid_argument("crosstalk reference size mismatch");
  std::vector<double> h(model.fields().begin(), model.fields().end());
  for (int i = 0; i < n; ++i) {
    if (!noise.qubit_offset.empty()) h[i] += noise.qubit_offset[i];
    if (!fbos.empty()) h[i] -= noise.fbo_scale * fbos[i];
  }
  if (noise.crosstalk_kappa != 0.0) {
    for (const auto& c : reference.couplings()) {
      h[c.i] += noise.crosstalk_kappa * c.value;
      h[c.j] += noise.crosstalk_kappa * c.value;
    }
  }
  std::vector<Coupling> couplings(model.couplings().begin(), model.couplings().end());
  for (auto& c : couplings) c.value *= 1.0 + noise.gain(c.i, c.j);
  return IsingModel(n, std::move(h), std::move(couplings));
}

SampleSet sample(const IsingModel& model, std::span<const double> fbos, NoiseModel& noise,
                 const SamplerParams& params, const IsingModel* crosstalk_reference) {
  params.validate();
  if (noise.drift_sigma > 0.0) noise.drift();
  const IsingModel effective = effective_model(model, fbos, noise, crosstalk_reference);
  const auto betas = geometric_schedule(params.beta_initial, params.beta_final, params.sweeps);
  SampleSet out = run_reads(effective, betas, params.reads, params.seed, params.threads);
  out.provenance = {model.hash(), params, -1};
  return out;
}

SampleSet sample_model(const IsingModel& model, const SamplerParams& params) {
  params.validate();
  const auto betas = geometric_schedule(params.beta_initial, params.beta_final, params.sweeps);
  SampleSet out = run_reads(model, betas, params.reads, params.seed, params.threads);
  out.provenance = {model.hash(), params, -1};
  return out;
}

SampleSet sample_fixed_beta(const IsingModel& model, double beta, int sweeps, int reads,
                            std::uint64_t seed) {
  const std::vector<double> betas(static_cast<std::size_t>(sweeps), beta);
  return run_reads(model, betas, reads, seed, 1);
}

ExactStats exact_stats(const IsingModel& model, double beta) {
  const int n = model.num_spins();
  if (n > 24) throw std::invalid_argument("exact_stats supports at most 24 spins");
  const auto couplings = model.couplings();
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> energies(states);
  SpinState s(static_cast<std::size_t>(n));
  double lowest = INFINITY;
  for (std::uint64_t mask = 0; mask < states; ++mask) {
    for (int i = 0; i < n; ++i) s[i] = (mask >> i & 1) ? 1 : -1;
    energies[mask] = energy(model, s);
    lowest = std::min(lowest, energies[mask]);
  }
  ExactStats out{std::vector<double>(static_cast<std::size_t>(n), 0.0),
                 std::vector<double>(couplings.size(), 0.0)};
  double z = 0.0;
  for (std::uint64_t mask = 0; mask < states; ++mask) {
    const double w = std::exp(-beta * (energies[mask] - lowest));
    z += w;
    for (int i = 0; i < n; ++i) out.magnetization[i] += (mask >> i & 1) ? w : -w;
    for (std::size_t k = 0; k < couplings.size(); ++k) {
      const Spin si = (mask >> couplings[k].i & 1) ? 1 : -1;
      const Spin sj = (mask >> couplings[k].j & 1) ? 1 : -1;
      out.frustration[k] += w * frustration_indicator(couplings[k].value, si, sj);
    }
  }
  for (auto& x : out.magnetization) x /= z;
  for (auto& x : out.frustration) x /= z;
  return out;
}

}  // namespace isingshim
