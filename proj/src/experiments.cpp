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

#include "isingshim/experiments.hpp"

#include <algorithm>
#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "isingshim/errors.hpp"
#include "isingshim/format.hpp"
#include "isingshim/hardware.hpp"
#include "isingshim/model_io.hpp"
#include "isingshim/orbits.hpp"
#include "isingshim/seeding.hpp"

namespace isingshim {

namespace {

std::vector<double> spec_numbers(const std::string& spec, std::size_t colon) {
  std::vector<double> out;
  if (colon == std::string::npos) return out;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad number '" + item + "' in model spec " + spec);
    out.push_back(v);
  }
  return out;
}

std::string spec_kind(const std::string& spec) { return spec.substr(0, spec.find(':')); }

std::optional<SquareCylinder> cylinder_from_spec(const std::string& spec) {
  if (spec_kind(spec) != "square_cylinder") return std::nullopt;
  const auto v = spec_numbers(spec, spec.find(':'));
  if (v.size() < 2 || v.size() > 3) throw std::invalid_argument("square_cylinder needs R,C[,J_AFM]");
  return make_square_cylinder(static_cast<int>(v[0]), static_cast<int>(v[1]), v.size() == 3 ? v[2] : 0.9);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* shim_type_name(ShimType t) {
  return t == ShimType::embedded_finite ? "embedded_finite" : "triangular_infinite";
}

ShimType parse_shim_type(const std::string& s) {
  if (s == "embedded_finite") return ShimType::embedded_finite;
  if (s == "triangular_infinite") return ShimType::triangular_infinite;
  throw std::invalid_argument("unknown shim_type " + s);
}

}  // namespace

IsingModel model_from_spec(const std::string& spec) {
  const std::string kind = spec_kind(spec);
  const auto colon = spec.find(':');
  if (kind == "fm_loop" || kind == "frustrated_loop") {
    const auto v = spec_numbers(spec, colon);
    if (v.empty() || v.size() > 2) throw std::invalid_argument(kind + " needs L[,J]");
    const int length = static_cast<int>(v[0]);
    const double j = v.size() == 2 ? v[1] : -1.0;
    return kind == "fm_loop" ? make_fm_loop(length, j) : make_frustrated_loop(length, j);
  }
  if (kind == "buckyball") {
    const auto v = spec_numbers(spec, colon);
    const auto model = make_buckyball();
    if (v.empty()) return model;
    std::vector<double> values(model.num_couplings(), v[0]);
    return model.with_coupling_values(values);
  }
  if (auto cyl = cylinder_from_spec(spec)) return cyl->model;
  return read_model_file(spec);
}

std::string ExperimentConfig::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["preset"] = preset;
  doc["model"] = model;
  doc["hardware"] = hardware;
  doc["copies"] = copies;
  doc["embedding"] = {{"block_rows", embedding.block_rows},
                      {"block_cols", embedding.block_cols},
                      {"node_budget", embedding.node_budget},
                      {"restarts", embedding.restarts}};
  doc["noise"] = {{"offset_sigma", noise.offset_sigma},
                  {"gain_sigma", noise.gain_sigma},
                  {"crosstalk_kappa", noise.crosstalk_kappa},
                  {"drift_sigma", noise.drift_sigma},
                  {"fbo_scale", noise.fbo_scale}};
  doc["noise_file"] = noise_file ? nlohmann::ordered_json(*noise_file) : nlohmann::ordered_json(nullptr);
  doc["shim_type"] = shim_type_name(shim_type);
  doc["halve_boundary_couplers"] = halve_boundary_couplers;
  doc["shim_afm_only"] = shim_afm_only;
  doc["adaptive_step_size"] = shim.adaptive.enabled;
  doc["iterations"] = iterations;
  doc["shim"] = nlohmann::ordered_json::parse(shim.to_json());
  doc["seed"] = seed;
  if (ensemble) {
    doc["ensemble"] = {{"realizations", ensemble->realizations},
                       {"cycles", ensemble->cycles},
                       {"magnitude", ensemble->magnitude}};
  }
  return doc.dump(1) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (doc.value("schema", 0) != 1) throw std::invalid_argument("experiment config needs \"schema\": 1");
  ExperimentConfig c;
  if (doc.contains("preset") && doc.at("preset") != "custom") {
    c = make_preset(doc.at("preset").get<std::string>(), doc.value("full_scale", false));
  }
  c.model = doc.value("model", c.model);
  c.hardware = doc.value("hardware", c.hardware);
  c.copies = doc.value("copies", c.copies);
  if (doc.contains("embedding")) {
    const auto& e = doc.at("embedding");
    c.embedding.block_rows = e.value("block_rows", c.embedding.block_rows);
    c.embedding.block_cols = e.value("block_cols", c.embedding.block_cols);
    c.embedding.node_budget = e.value("node_budget", c.embedding.node_budget);
    c.embedding.restarts = e.value("restarts", c.embedding.restarts);
  }
  if (doc.contains("noise")) {
    const auto& n = doc.at("noise");
    c.noise.offset_sigma = n.value("offset_sigma", c.noise.offset_sigma);
    c.noise.gain_sigma = n.value("gain_sigma", c.noise.gain_sigma);
    c.noise.crosstalk_kappa = n.value("crosstalk_kappa", c.noise.crosstalk_kappa);
    c.noise.drift_sigma = n.value("drift_sigma", c.noise.drift_sigma);
    c.noise.fbo_scale = n.value("fbo_scale", c.noise.fbo_scale);
  }
  if (doc.contains("noise_file") && !doc.at("noise_file").is_null()) c.noise_file = doc.at("noise_file").get<std::string>();
  if (doc.contains("shim_type")) c.shim_type = parse_shim_type(doc.at("shim_type").get<std::string>());
  c.halve_boundary_couplers = doc.value("halve_boundary_couplers", c.halve_boundary_couplers);
  c.shim_afm_only = doc.value("shim_afm_only", c.shim_afm_only);
  c.iterations = doc.value("iterations", c.iterations);
  if (doc.contains("shim")) {
    auto merged = nlohmann::json::parse(c.shim.to_json());
    merged.merge_patch(doc.at("shim"));
    c.shim = ShimConfig::from_json(merged.dump());
  }
  c.shim.adaptive.enabled = doc.value("adaptive_step_size", c.shim.adaptive.enabled);
  c.seed = doc.value("seed", c.seed);
  if (doc.contains("ensemble") && !doc.at("ensemble").is_null()) {
    const auto& e = doc.at("ensemble");
    EnsembleSettings s;
    s.realizations = e.value("realizations", s.realizations);
    s.cycles = e.value("cycles", s.cycles);
    s.magnitude = e.value("magnitude", s.magnitude);
    c.ensemble = s;
  }
  if (c.copies < 1) throw std::invalid_argument("copies must be >= 1");
  if (c.iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  return c;
}

ExperimentConfig make_preset(const std::string& name, bool full_scale) {
  ExperimentConfig c;
  c.preset = name;
  c.shim.sampler.sweeps = full_scale ? 1000 : 200;
  if (name == "fm_loop_balancing") {
    c.model = "fm_loop:64,-0.5";
    c.iterations = 100;
    c.shim.stages.fbo = 10;
    c.shim.alpha_phi = 1e-5;
  } else if (name == "fm_loop_correlations") {
    c.model = "fm_loop:64,-0.5";
    c.copies = full_scale ? 1000 : 4;
    c.iterations = 300;
    c.shim.stages.fbo = 100;
    c.shim.stages.coupler = 200;
    c.shim.alpha_phi = 1e-5;
    c.shim.alpha_j = 1e-3;
  } else if (name == "frustrated_loop") {
    c.model = "frustrated_loop:16,-0.9";
    c.copies = full_scale ? 165 : 4;
    c.iterations = 300;
    c.shim.stages.fbo = 100;
    c.shim.stages.coupler = 200;
    c.shim.alpha_j = 0.2;
  } else if (name == "buckyball_orbits") {
    c.model = "buckyball:1";
    c.hardware = "none";
    c.copies = full_scale ? 10 : 2;
    c.iterations = full_scale ? 300 : 100;
    c.shim.stages.fbo = full_scale ? 100 : 10;
    c.shim.stages.coupler = full_scale ? 200 : 30;
    c.shim.alpha_j = 0.2;
  } else if (name == "tafm_forward_anneal") {
    c.model = full_scale ? "square_cylinder:12,12,0.9" : "square_cylinder:6,6,0.9";
    c.copies = full_scale ? 10 : 2;
    c.embedding.block_rows = full_scale ? 6 : 4;
    c.embedding.block_cols = c.embedding.block_rows;
    c.embedding.node_budget = full_scale ? 50'000 : 20'000;
    c.embedding.restarts = full_scale ? 4 : 30;
    c.iterations = full_scale ? 800 : 100;
    c.shim.stages.fbo = full_scale ? 100 : 10;
    c.shim.stages.coupler = full_scale ? 300 : 30;
    c.shim.alpha_j = 0.05;
    c.shim_afm_only = true;
  } else if (name == "ensemble") {
    c.model = "square_cylinder:6,6,0.9";
    c.hardware = "none";
    c.ensemble = EnsembleSettings{full_scale ? 300 : 30, 20, 0.5};
    c.shim.stages.fbo = 0;
  } else {
    throw std::invalid_argument("unknown preset " + name);
  }
  return c;
}

ExperimentSeeds ExperimentSeeds::from(std::uint64_t seed) {
  return {derive_seed(seed, 1), derive_seed(seed, 2), derive_seed(seed, 3), derive_seed(seed, 4)};
}

PreparedExperiment prepare_experiment(const ExperimentConfig& config, bool allow_abstract_fallback) {
  const auto seeds = ExperimentSeeds::from(config.seed);
  const auto cylinder = cylinder_from_spec(config.model);
  PreparedExperiment out;
  out.source = cylinder ? cylinder->model : model_from_spec(config.model);
  const int n = out.source.num_spins();
  const int copies = config.ensemble ? 1 : config.copies;
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");

  std::optional<HardwareGraph> hardware;
  if (config.hardware != "none") {
    hardware = parse_hardware(config.hardware);
    RasterOptions options = config.embedding;
    options.seed = seeds.embedding;
    options.max_embeddings = static_cast<std::size_t>(copies);
    const auto found = raster_embed(out.source, *hardware, options);
    if (found.size() == 0) {
      if (!allow_abstract_fallback) throw EmptyResult("no embeddings of " + config.model + " on " + config.hardware);
      out.notes.push_back("no embedding found on " + config.hardware + "; using abstract copies");
      hardware.reset();
    } else {
      if (found.size() < static_cast<std::size_t>(copies)) {
        out.notes.push_back("found " + std::to_string(found.size()) + " of " + std::to_string(copies) +
                            " requested embeddings");
      }
      const auto packed = compact(found);
      out.embeddings = packed.embeddings;
      out.hardware_qubit = packed.hardware_qubit;
    }
  }
  if (!hardware) {
    out.abstract_copies = true;
    out.embeddings = EmbeddingSet{out.source, {}, n * copies};
    for (int k = 0; k < copies; ++k) {
      std::vector<int> map(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s) map[s] = k * n + s;
      out.embeddings.maps.push_back(std::move(map));
    }
  }
  out.copies = out.embeddings.size();

  const IsingModel programmed = program_embeddings(out.source, out.embeddings);
  Orbits orbits = merge_embedding_orbits(ising_orbits(out.source), out.embeddings);
  const std::size_t per_copy = out.source.num_couplings();
  if (cylinder && config.shim_type == ShimType::triangular_infinite) {
    // One class for every AFM coupler and one for every chain coupler.
    int afm_id = -1;
    int fm_id = -1;
    for (std::size_t k = 0; k < programmed.num_couplings(); ++k) {
      int& id = programmed.couplings()[k].value > 0 ? afm_id : fm_id;
      if (id < 0) id = static_cast<int>(k);
      orbits.coupler_orbit[k] = id;
    }
    orbits.opposite_coupler.clear();
  }
  ShimProblem& problem = out.problem;
  problem.nominal = programmed;
  if (cylinder && config.halve_boundary_couplers) {
    auto values = programmed.coupling_values();
    for (std::size_t copy = 0; copy < out.copies; ++copy) {
      for (std::size_t k : cylinder->boundary_couplers()) values[copy * per_copy + k] /= 2.0;
    }
    problem.nominal = programmed.with_coupling_values(values);
  }
  problem.orbits = std::move(orbits);
  if (cylinder && config.shim_afm_only) {
    for (std::size_t copy = 0; copy < out.copies; ++copy) {
      for (std::size_t k : cylinder->afm_couplers()) out.shimmed_couplers.push_back(copy * per_copy + k);
    }
    std::sort(out.shimmed_couplers.begin(), out.shimmed_couplers.end());
  }

  if (config.noise_file) {
    NoiseModel loaded = NoiseModel::from_json(read_text(*config.noise_file));
    problem.noise = hardware ? loaded.restrict_to(out.hardware_qubit) : loaded;
  } else if (hardware) {
    problem.noise = generate_noise(hardware->graph, config.noise, seeds.noise).restrict_to(out.hardware_qubit);
  } else {
    problem.noise = generate_noise(interaction_graph(programmed), config.noise, seeds.noise);
  }
  if (problem.noise.qubit_offset.size() != static_cast<std::size_t>(programmed.num_spins())) {
    throw std::invalid_argument("noise model does not cover the programmed qubits");
  }

  if (cylinder) {
    const auto contracted = contract_chains(cylinder->model, cylinder->chain_pairs);
    problem.psi = PsiReadout{three_coloring(contracted.logical), contracted.logical_of, n,
                             static_cast<int>(out.copies)};
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config, const RunStreams& streams) {
  ExperimentOutput out;
  out.prepared = prepare_experiment(config);
  const auto seeds = ExperimentSeeds::from(config.seed);
  ShimConfig shim = config.shim;
  shim.sampler.seed = seeds.sampler;
  if (!out.prepared.shimmed_couplers.empty()) shim.shimmed_couplers = out.prepared.shimmed_couplers;

  if (!config.ensemble) {
    out.run = run_loop(out.prepared.problem, shim, config.iterations, streams);
    return out;
  }
  std::vector<IsingModel> realizations;
  for (int r = 0; r < config.ensemble->realizations; ++r) {
    const auto glass = make_spin_glass(out.prepared.source, config.ensemble->magnitude,
                                       derive_seed(seeds.realizations, static_cast<std::uint64_t>(r)));
    realizations.push_back(program_embeddings(glass, out.prepared.embeddings));
  }
  out.ensemble = ensemble_fbo_shim(realizations, out.prepared.problem.noise, shim, config.ensemble->cycles);
  if (streams.series != nullptr) {
    auto& os = *streams.series;
    os << "iter,kind,id,value\n";
    for (std::size_t t = 0; t < out.ensemble->magnetization.size(); ++t) {
      const auto& m = out.ensemble->magnetization[t];
      for (std::size_t i = 0; i < m.size(); ++i) os << t << ",m," << i << ',' << format_double(m[i]) << '\n';
    }
    const auto last = out.ensemble->magnetization.size();
    for (std::size_t i = 0; i < out.ensemble->fbo.size(); ++i) {
      os << last << ",phi," << i << ',' << format_double(out.ensemble->fbo[i]) << '\n';
    }
  }
  out.run.state = ShimState::initial(out.prepared.problem.nominal, shim);
  out.run.state.fbo = out.ensemble->fbo;
  return out;
}

}  // namespace isingshim
