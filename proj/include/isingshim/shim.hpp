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
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "isingshim/ising_model.hpp"
#include "isingshim/orbits.hpp"
#include "isingshim/sampler.hpp"
#include "isingshim/statistics.hpp"

namespace isingshim {

// First iteration at which each shim runs; empty means never.
struct StageSchedule {
  std::optional<int> fbo;
  std::optional<int> coupler;
  std::optional<int> field;
  std::optional<int> damping;

  static bool active(const std::optional<int>& start, int iteration) {
    return start.has_value() && iteration >= *start;
  }
};

struct AdaptiveConfig {
  bool enabled = false;
  double epsilon = 0.1;
  double upper = 1.1;
  double lower = 0.9;
  std::size_t lookback = 20;
  int every = 1;
  // One step-size multiplier per orbit instead of one per quantity.
  bool per_orbit = false;
};

struct ShimConfig {
  StageSchedule stages;
  double alpha_phi = 1e-5;
  double alpha_j = 1e-3;
  double alpha_h = 1e-2;
  double coupling_min = -2.0;
  double coupling_max = 1.0;
  // Lower bound on the per-step coupler multiplier 1 + alpha_J (f - fbar).
  double multiplier_floor = 0.5;
  bool renormalize = true;
  double rho = 0.0;
  double hbar = 0.0;
  AdaptiveConfig adaptive;
  // Couplers the coupler shim may touch; empty means all.
  std::vector<std::size_t> shimmed_couplers;
  std::size_t window = 10;
  SamplerParams sampler;

  // Throws std::invalid_argument on out-of-range settings.
  void validate() const;
  std::string to_json() const;
  static ShimConfig from_json(const std::string& text);
};

struct ShimState {
  std::vector<double> fbo;
  std::vector<double> couplings;
  std::vector<double> fields;
  double alpha_phi = 0.0;
  double alpha_j = 0.0;
  double alpha_h = 0.0;
  int iteration = 0;
  std::size_t clamp_events = 0;
  std::size_t floor_events = 0;
  // Per-orbit step-size multipliers (missing orbits use 1).
  std::map<int, double> phi_orbit_scale;
  std::map<int, double> j_orbit_scale;
  std::map<int, double> h_orbit_scale;
  ObservableSeries history;

  static ShimState initial(const IsingModel& start, const ShimConfig& config);

  // History is not serialized.
  std::string to_json() const;
  static ShimState from_json(const std::string& text);
};

// Phi_i <- Phi_i - alpha_phi (m_i - mbar).
void fbo_step(ShimState& state, std::span<const double> m, const Orbits& orbits);

// J <- J (1 + alpha_J (f - fbar)) with the multiplier floored, then each orbit
// rescaled to its nominal mean, then clamped to the coupling range. Throws
// std::invalid_argument if an orbit's mean coupling is zero.
void coupler_step(ShimState& state, std::span<const double> f, const Orbits& orbits, const ShimConfig& config,
                  const IsingModel& nominal);

// h_i <- h_i + alpha_h (m_i - mbar), then each qubit orbit shifted so its
// mean field is hbar. Throws std::invalid_argument when hbar is 0.
void field_step(ShimState& state, std::span<const double> m, const Orbits& orbits, double hbar);

// grid[g][i] is h_i at the g-th field magnitude, in increasing order.
std::vector<std::vector<double>> smooth_fields(const std::vector<std::vector<double>>& grid, double eps);

// J <- J - rho (J - Jhat).
void damp_step(ShimState& state, double rho, const IsingModel& nominal);

enum class ShimQuantity { fbo, coupler, field };

// Scales the step size of `which` from the walk exponent of its recent
// history. `terms` restricts the tracked terms (all when empty). Returns the
// fitted exponent, or nothing when it is undefined.
std::optional<double> adapt_step_size(ShimState& state, ShimQuantity which, const AdaptiveConfig& config,
                                      std::span<const std::size_t> terms = {});

// Per-orbit variant: fits one exponent per orbit of `which` and scales that
// orbit's multiplier. Orbits with an undefined exponent map to nothing.
std::map<int, std::optional<double>> adapt_orbit_step_sizes(ShimState& state, ShimQuantity which,
                                                            const Orbits& orbits, const AdaptiveConfig& config,
                                                            std::span<const std::size_t> terms = {});

// Logical readout of the order parameter for chained copies laid out
// contiguously, spins_per_copy physical spins each.
struct PsiReadout {
  SublatticeColoring coloring;
  std::vector<int> logical_of;
  int spins_per_copy = 0;
  int copies = 0;
};

struct ShimProblem {
  IsingModel nominal;
  // Starting couplings and fields; nominal when empty.
  std::optional<IsingModel> initial;
  Orbits orbits;
  NoiseModel noise;
  std::optional<PsiReadout> psi;
};

struct RunOutput {
  ShimState state;
  std::vector<std::vector<std::complex<double>>> psi;
};

struct RunStreams {
  std::ostream* series = nullptr;  // iter,kind,id,value
  std::ostream* psi = nullptr;     // iter,read,re,im
};

// Iterates sample -> observe -> shim. Iteration t samples with seed
// derive_seed(config.sampler.seed, t).
RunOutput run_loop(const ShimProblem& problem, const ShimConfig& config, int iterations,
                   const RunStreams& streams = {}, const ShimState* warm_start = nullptr);

struct EnsembleOutput {
  std::vector<double> fbo;
  // Per call: magnetizations observed, in call order.
  std::vector<std::vector<double>> magnetization;
};

// Round-robin FBO shim over zero-field realizations sharing one set of
// qubits. Each realization is sampled once per cycle.
EnsembleOutput ensemble_fbo_shim(std::span<const IsingModel> realizations, const NoiseModel& noise,
                                 const ShimConfig& config, int cycles);

}  // namespace isingshim
