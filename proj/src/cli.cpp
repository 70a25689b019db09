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

#include "isingshim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "isingshim/errors.hpp"
#include "isingshim/experiments.hpp"
#include "isingshim/hardware.hpp"
#include "isingshim/orbits.hpp"

namespace isingshim::cli {

namespace {

std::string fixed(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << v;
  return ss.str();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  return out;
}

void orbit_table(std::ostream& out, const char* label, const std::vector<int>& orbit_of,
                 const std::map<int, int>& opposite) {
  std::map<int, int> sizes;
  for (int id : orbit_of) ++sizes[id];
  out << label << " orbit  size  opposite\n";
  for (const auto& [id, size] : sizes) {
    auto it = opposite.find(id);
    out << std::setw(12) << id << std::setw(6) << size << "  "
        << (it == opposite.end() ? std::string("-") : it->second == id ? std::string("self")
                                                                        : std::to_string(it->second))
        << '\n';
  }
}

}  // namespace

int cmd_orbits(const OrbitsArgs& args, std::ostream& out) {
  const IsingModel model = model_from_spec(args.model);
  const Orbits orbits = ising_orbits(model);
  out << "qubit orbits: " << orbits.num_qubit_orbits() << ", coupler orbits: " << orbits.num_coupler_orbits()
      << '\n';
  orbit_table(out, "qubit  ", orbits.qubit_orbit, orbits.opposite_qubit);
  orbit_table(out, "coupler", orbits.coupler_orbit, orbits.opposite_coupler);
  const std::string json = orbits_to_json(model, orbits);
  if (args.out) {
    open_out(*args.out) << json;
  } else {
    out << json;
  }
  return kSuccess;
}

int cmd_embed(const EmbedArgs& args, std::ostream& out) {
  const IsingModel pattern = model_from_spec(args.pattern);
  const HardwareGraph hardware = parse_hardware(args.hardware);
  RasterOptions options;
  options.block_rows = args.block;
  options.block_cols = args.block;
  options.seed = args.seed;
  options.node_budget = args.node_budget;
  options.restarts = args.restarts;
  if (args.max_embeddings > 0) options.max_embeddings = args.max_embeddings;
  const EmbeddingSet found = raster_embed(pattern, hardware, options);
  out << "embeddings: " << found.size() << " of " << args.pattern << " on " << args.hardware << '\n';
  if (found.size() == 0) return kEmptyResult;
  validate_embeddings(found, &hardware);
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["pattern"] = args.pattern;
  doc["hardware"] = args.hardware;
  doc["seed"] = args.seed;
  doc["maps"] = found.maps;
  open_out(args.out) << doc.dump() << '\n';
  return kSuccess;
}

int cmd_run(const RunArgs& args, std::ostream& out) {
  const auto& names = preset_names();
  ExperimentConfig config;
  if (std::find(names.begin(), names.end(), args.experiment) != names.end()) {
    config = make_preset(args.experiment, args.full_scale);
  } else {
    std::ifstream in(args.experiment);
    if (!in) throw std::invalid_argument("unknown preset or unreadable config: " + args.experiment);
    std::stringstream ss;
    ss << in.rdbuf();
    config = ExperimentConfig::from_json(ss.str());
  }
  if (args.seed) config.seed = *args.seed;
  if (args.iterations) config.iterations = *args.iterations;
  if (args.adapt_every) {
    config.shim.adaptive.enabled = true;
    config.shim.adaptive.every = *args.adapt_every;
  }
  config.shim.sampler.threads = args.threads;

  const std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);
  open_out(dir / "config.json") << config.to_json();
  auto series = open_out(dir / "series.csv");
  std::optional<std::ofstream> psi;
  if (config.model.starts_with("square_cylinder") && !config.ensemble) psi = open_out(dir / "psi.csv");
  const auto result = run_experiment(config, {&series, psi ? &*psi : nullptr});
  open_out(dir / "state.json") << result.run.state.to_json();

  const auto& prep = result.prepared;
  if (!prep.abstract_copies) {
    std::vector<std::vector<int>> maps;
    for (const auto& map : prep.embeddings.maps) {
      std::vector<int> hw;
      for (int q : map) hw.push_back(prep.hardware_qubit[q]);
      maps.push_back(std::move(hw));
    }
    nlohmann::ordered_json doc;
    doc["schema"] = 1;
    doc["pattern"] = config.model;
    doc["hardware"] = config.hardware;
    doc["maps"] = maps;
    open_out(dir / "embeddings.json") << doc.dump() << '\n';
  }

  out << "experiment: " << config.preset << '\n';
  out << "copies: " << prep.copies << (prep.abstract_copies ? " (abstract)" : " on " + config.hardware) << '\n';
  for (const auto& note : prep.notes) out << "note: " << note << '\n';
  if (result.ensemble) {
    const auto& calls = result.ensemble->magnetization;
    const auto per_cycle = static_cast<std::size_t>(config.ensemble->realizations);
    auto mean_abs = [&](std::size_t first) {
      std::vector<double> avg(calls.front().size(), 0.0);
      for (std::size_t t = first; t < first + per_cycle; ++t) {
        for (std::size_t i = 0; i < avg.size(); ++i) avg[i] += calls[t][i] / static_cast<double>(per_cycle);
      }
      double total = 0.0;
      for (double v : avg) total += std::abs(v);
      return total / static_cast<double>(avg.size());
    };
    if (!calls.empty()) {
      out << "mean |m|: first cycle " << fixed(mean_abs(0)) << ", last cycle "
          << fixed(mean_abs(calls.size() - per_cycle)) << '\n';
    }
    return kSuccess;
  }
  const auto& history = result.run.state.history;
  out << "iterations: " << history.size() << '\n';
  const std::size_t window = config.shim.window;
  if (history.size() >= window) {
    const auto d = dispersion(history, prep.problem.orbits, window);
    out << "sigma_m: first window " << fixed(d.sigma_m.front()) << ", last window " << fixed(d.sigma_m.back())
        << '\n';
    out << "sigma_f: first window " << fixed(d.sigma_f.front()) << ", last window " << fixed(d.sigma_f.back())
        << '\n';
  } else {
    out << "sigma_m, sigma_f: need at least " << window << " iterations\n";
  }
  if (!result.run.psi.empty()) {
    auto mean_abs = [](const std::vector<std::complex<double>>& v) {
      double total = 0.0;
      for (auto z : v) total += std::abs(z);
      return total / static_cast<double>(v.size());
    };
    out << "<|psi|>: first iteration " << fixed(mean_abs(result.run.psi.front())) << ", last iteration "
        << fixed(mean_abs(result.run.psi.back())) << '\n';
  }
  return kSuccess;
}

int cmd_noise_gen(const NoiseArgs& args, std::ostream& out) {
  NoiseModel noise;
  if (!args.hardware.empty()) {
    noise = generate_noise(parse_hardware(args.hardware).graph, args.spec, args.seed);
  } else if (!args.model.empty()) {
    noise = generate_noise(interaction_graph(model_from_spec(args.model)), args.spec, args.seed);
  } else {
    throw std::invalid_argument("noise-gen needs --hardware or --model");
  }
  if (args.out) {
    open_out(*args.out) << noise.to_json();
    out << "noise: " << noise.qubit_offset.size() << " qubits, " << noise.coupler_gain.size() << " couplers\n";
  } else {
    out << noise.to_json();
  }
  return kSuccess;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-based calibration refinement for simulated annealers"};
  app.require_subcommand(1);

  OrbitsArgs orbits_args;
  auto* orbits = app.add_subcommand("orbits", "Find qubit and coupler orbits of a model");
  orbits->add_option("model", orbits_args.model, "Model file or generator spec")->required();
  orbits->add_option("-o,--out", orbits_args.out, "Orbit JSON output path");

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand("embed", "Find disjoint copies of a model in a hardware graph");
  embed->add_option("pattern", embed_args.pattern, "Model file or generator spec")->required();
  embed->add_option("--hardware", embed_args.hardware, "pegasus:M or chimera:M[,N,T]");
  embed->add_option("--seed", embed_args.seed);
  embed->add_option("-o,--out", embed_args.out);
  embed->add_option("--max", embed_args.max_embeddings, "Stop after this many copies (0: no limit)");
  embed->add_option("--block", embed_args.block, "Raster window size in unit cells");
  embed->add_option("--budget", embed_args.node_budget, "Search nodes per window attempt");
  embed->add_option("--restarts", embed_args.restarts, "Seeded attempts per window");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a shimming experiment");
  std::string preset_help = "Preset name (";
  for (const auto& name : preset_names()) preset_help += name + (name == preset_names().back() ? ")" : ", ");
  run->add_option("experiment", run_args.experiment, preset_help + " or config JSON path")->required();
  run->add_option("--seed", run_args.seed);
  run->add_option("-o,--out", run_args.out_dir, "Output directory");
  run->add_flag("--full-scale,--paper-scale", run_args.full_scale, "Use full-size settings");
  run->add_option("--threads", run_args.threads)->check(CLI::PositiveNumber);
  run->add_option("--iterations", run_args.iterations)->check(CLI::NonNegativeNumber);
  run->add_option("--adapt-every", run_args.adapt_every, "Adapt step sizes every k iterations")
      ->check(CLI::PositiveNumber);

  NoiseArgs noise_args;
  auto* noise = app.add_subcommand("noise-gen", "Generate a synthetic noise model");
  noise->add_option("--hardware", noise_args.hardware);
  noise->add_option("--model", noise_args.model);
  noise->add_option("--seed", noise_args.seed);
  noise->add_option("--offset-sigma", noise_args.spec.offset_sigma);
  noise->add_option("--gain-sigma", noise_args.spec.gain_sigma);
  noise->add_option("--kappa", noise_args.spec.crosstalk_kappa);
  noise->add_option("--drift-sigma", noise_args.spec.drift_sigma);
  noise->add_option("--fbo-scale", noise_args.spec.fbo_scale);
  noise->add_option("-o,--out", noise_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*orbits) return cmd_orbits(orbits_args, out);
    if (*embed) return cmd_embed(embed_args, out);
    if (*run) return cmd_run(run_args, out);
    return cmd_noise_gen(noise_args, out);
  } catch (const EmptyResult& e) {
    err << "error: " << e.what() << '\n';
    return kEmptyResult;
  } catch (const ResourceLimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace isingshim::cli
