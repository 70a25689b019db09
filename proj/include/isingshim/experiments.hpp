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
#include <ostream>
#include <string>
#include <vector>

#include "isingshim/embedding.hpp"
#include "isingshim/model_generators.hpp"
#include "isingshim/sampler.hpp"
#include "isingshim/shim.hpp"

namespace isingshim {

// Model specs: "fm_loop:L[,J]", "frustrated_loop:L[,J]", "buckyball[:J]",
// "square_cylinder:R,C[,J_AFM]"; anything else is read as a model file.
IsingModel model_from_spec(const std::string& spec);

enum class ShimType { embedded_finite, triangular_infinite };

struct EnsembleSettings {
  int realizations = 30;
  int cycles = 20;
  double magnitude = 0.5;
};

struct ExperimentConfig {
  std::string preset = "custom";
  std::string model = "fm_loop:64,-0.5";
  // "none" runs abstract copies with no hardware graph.
  std::string hardware = "pegasus:16";
  int copies = 1;
  RasterOptions embedding;
  NoiseSpec noise;
  std::optional<std::string> noise_file;
  ShimType shim_type = ShimType::embedded_finite;
  bool halve_boundary_couplers = false;
  // Restrict the coupler shim to AFM couplers of a square cylinder.
  bool shim_afm_only = false;
  int iterations = 100;
  ShimConfig shim;
  std::uint64_t seed = 0;
  std::optional<EnsembleSettings> ensemble;

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fm_loop_balancing", "fm_loop_correlations", "frustrated_loop",
                                              "buckyball_orbits",  "tafm_forward_anneal",  "ensemble"};
  return names;
}

// Throws std::invalid_argument for unknown names.
ExperimentConfig make_preset(const std::string& name, bool full_scale = false);

// Seeds derived from the experiment seed; one stream per purpose.
struct ExperimentSeeds {
  std::uint64_t embedding;
  std::uint64_t noise;
  std::uint64_t sampler;
  std::uint64_t realizations;

  static ExperimentSeeds from(std::uint64_t seed);
};

struct PreparedExperiment {
  ShimProblem problem;
  IsingModel source;
  EmbeddingSet embeddings;  // compact indices
  std::vector<int> hardware_qubit;
  // Couplers open to the coupler shim; empty means all.
  std::vector<std::size_t> shimmed_couplers;
  std::size_t copies = 0;
  bool abstract_copies = false;
  std::vector<std::string> notes;
};

// Builds the problem: source model, embeddings (falling back to abstract
// copies when hardware search finds none), orbits and noise. Throws
// EmptyResult when the fallback is disabled and no embedding is found.
PreparedExperiment prepare_experiment(const ExperimentConfig& config, bool allow_abstract_fallback = true);

struct ExperimentOutput {
  PreparedExperiment prepared;
  RunOutput run;
  std::optional<EnsembleOutput> ensemble;
};

ExperimentOutput run_experiment(const ExperimentConfig& config, const RunStreams& streams = {});

}  // namespace isingshim
