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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "isingshim/graph.hpp"
#include "isingshim/ising_model.hpp"

namespace isingshim {

// Conversion from flux-bias units to field units used by default; see
// NoiseModel::fbo_scale.
inline constexpr double kDefaultFboScale = 1000.0;

// Systematic distortions of the simulated annealer, indexed by the qubits of
// the model being sampled.
struct NoiseModel {
  std::vector<double> qubit_offset;                    // additive field bias
  std::map<std::pair<int, int>, double> coupler_gain;  // J_eff = J (1 + gain); absent = 0
  double crosstalk_kappa = 0.0;  // each coupler J_ij adds kappa J_ij to h_i and h_j
  double fbo_scale = kDefaultFboScale;
  double drift_sigma = 0.0;  // random-walk std of qubit_offset per sample call
  std::uint64_t seed = 0;
  std::uint64_t drift_steps = 0;

  double gain(int i, int j) const;
  // Throws std::invalid_argument unless |gain| < 1, fbo_scale > 0 and
  // drift_sigma >= 0.
  void validate() const;
  // Noise as seen through a relabeling: qubit k of the result is qubit
  // hardware_qubit[k] of this model.
  NoiseModel restrict_to(std::span<const int> hardware_qubit) const;
  // Advances the offset random walk by one step.
  void drift();

  std::string to_json() const;
  static NoiseModel from_json(const std::string& text);
};

struct NoiseSpec {
  double offset_sigma = 0.02;
  double gain_sigma = 0.02;
  double crosstalk_kappa = 0.005;
  double drift_sigma = 0.0;
  double fbo_scale = kDefaultFboScale;

  // Sigmas must be finite and non-negative, fbo_scale positive.
  void validate() const;
};

// Offsets and gains drawn from zero-mean normals over the qubits and edges of
// `graph`; gains are clipped to (-0.99, 0.99).
NoiseModel generate_noise(const Graph& graph, const NoiseSpec& spec, std::uint64_t seed);

struct SamplerParams {
  int reads = 100;
  int sweeps = 1000;
  double beta_initial = 0.1;
  double beta_final = 3.0;
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

struct SampleProvenance {
  std::uint64_t model_hash = 0;
  SamplerParams params;
  std::int64_t iteration = -1;
};

// reads x num_spins matrix of +-1, row-major.
class SampleSet {
 public:
  SampleSet(int reads, int num_spins);

  int reads() const noexcept { return reads_; }
  int num_spins() const noexcept { return num_spins_; }
  std::span<const Spin> read(int r) const;
  std::span<Spin> read(int r);
  Spin at(int r, int i) const { return data_[static_cast<std::size_t>(r) * num_spins_ + i]; }

  SampleProvenance provenance;

 private:
  int reads_;
  int num_spins_;
  std::vector<Spin> data_;
};

// h_eff = h + offset + kappa * sum_j J_ref_ij - fbo_scale * fbo and
// J_eff = J (1 + gain). Crosstalk uses the couplings of
// `crosstalk_reference` (the nominal model) when given, else of `model`.
IsingModel effective_model(const IsingModel& model, std::span<const double> fbos,
                           const NoiseModel& noise,
                           const IsingModel* crosstalk_reference = nullptr);

// Annealed Metropolis sampling of the effective model. Each read starts from
// uniform random spins and performs `sweeps` in-order sweeps with beta rising
// geometrically from beta_initial to beta_final. Read r uses seed
// derive_seed(params.seed, r), so results do not depend on `threads`. When
// noise.drift_sigma > 0 the offsets drift one step before sampling.
SampleSet sample(const IsingModel& model, std::span<const double> fbos, NoiseModel& noise,
                 const SamplerParams& params, const IsingModel* crosstalk_reference = nullptr);

// Sampling of `model` exactly as given (no noise, no flux bias).
SampleSet sample_model(const IsingModel& model, const SamplerParams& params);

// Metropolis sweeps at a fixed inverse temperature.
SampleSet sample_fixed_beta(const IsingModel& model, double beta, int sweeps, int reads,
                            std::uint64_t seed);

struct ExactStats {
  std::vector<double> magnetization;
  std::vector<double> frustration;
};

// Boltzmann averages by enumerating all 2^N states; N <= 24.
ExactStats exact_stats(const IsingModel& model, double beta);

}  // namespace isingshim
