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

#include "isingshim/shim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "isingshim/format.hpp"
#include "isingshim/seeding.hpp"

namespace isingshim {

namespace {

using nlohmann::ordered_json;

ordered_json optional_int(const std::optional<int>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::optional<int> read_optional_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<int>();
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = k;
  return out;
}

double orbit_scale(const std::map<int, double>& scales, int orbit) {
  const auto it = scales.find(orbit);
  return it == scales.end() ? 1.0 : it->second;
}

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(want) + " values, got " +
                                std::to_string(got));
  }
}

}  // namespace

void ShimConfig::validate() const {
  if (alpha_phi < 0.0 || alpha_j < 0.0 || alpha_h < 0.0) throw std::invalid_argument("step sizes must be >= 0");
  if (!(coupling_min < coupling_max)) throw std::invalid_argument("coupling range is empty");
  if (!(multiplier_floor > 0.0 && multiplier_floor <= 1.0)) {
    throw std::invalid_argument("multiplier_floor must lie in (0, 1]");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("damping rho must lie in [0, 1]");
  if (!(adaptive.epsilon > 0.0)) throw std::invalid_argument("adaptive epsilon must be positive");
  if (!(adaptive.lower < adaptive.upper)) throw std::invalid_argument("adaptive thresholds must be ordered");
  if (adaptive.lookback < 1) throw std::invalid_argument("adaptive lookback must be >= 1");
  if (adaptive.every < 1) throw std::invalid_argument("adaptive interval must be >= 1");
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (stages.field && hbar == 0.0) throw std::invalid_argument("field shim needs a nonzero hbar");
  sampler.validate();
}

std::string ShimConfig::to_json() const {
  ordered_json doc;
  doc["schema"] = 1;
  doc["stages"] = {{"fbo", optional_int(stages.fbo)},
                   {"coupler", optional_int(stages.coupler)},
                   {"field", optional_int(stages.field)},
                   {"damping", optional_int(stages.damping)}};
  doc["alpha_phi"] = alpha_phi;
  doc["alpha_j"] = alpha_j;
  doc["alpha_h"] = alpha_h;
  doc["coupling_range"] = {coupling_min, coupling_max};
  doc["multiplier_floor"] = multiplier_floor;
  doc["renormalize"] = renormalize;
  doc["rho"] = rho;
  doc["hbar"] = hbar;
  doc["adaptive"] = {{"enabled", adaptive.enabled},
                     {"epsilon", adaptive.epsilon},
                     {"upper", adaptive.upper},
                     {"lower", adaptive.lower},
                     {"lookback", adaptive.lookback},
                     {"every", adaptive.every},
                     {"per_orbit", adaptive.per_orbit}};
  doc["shimmed_couplers"] = shimmed_couplers;
  doc["window"] = window;
  doc["sampler"] = {{"reads", sampler.reads},
                    {"sweeps", sampler.sweeps},
                    {"beta_initial", sampler.beta_initial},
                    {"beta_final", sampler.beta_final},
                    {"seed", sampler.seed},
                    {"threads", sampler.threads}};
  return doc.dump(1) + "\n";
}

ShimConfig ShimConfig::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (doc.value("schema", 1) != 1) throw std::invalid_argument("unsupported shim config schema");
  ShimConfig c;
  if (doc.contains("stages")) {
    const auto& st = doc.at("stages");
    c.stages = {read_optional_int(st, "fbo"), read_optional_int(st, "coupler"), read_optional_int(st, "field"),
                read_optional_int(st, "damping")};
  }
  c.alpha_phi = doc.value("alpha_phi", c.alpha_phi);
  c.alpha_j = doc.value("alpha_j", c.alpha_j);
  c.alpha_h = doc.value("alpha_h", c.alpha_h);
  if (doc.contains("coupling_range")) {
    c.coupling_min = doc.at("coupling_range").at(0).get<double>();
    c.coupling_max = doc.at("coupling_range").at(1).get<double>();
  }
  c.multiplier_floor = doc.value("multiplier_floor", c.multiplier_floor);
  c.renormalize = doc.value("renormalize", c.renormalize);
  c.rho = doc.value("rho", c.rho);
  c.hbar = doc.value("hbar", c.hbar);
  if (doc.contains("adaptive")) {
    const auto& a = doc.at("adaptive");
    c.adaptive.enabled = a.value("enabled", c.adaptive.enabled);
    c.adaptive.epsilon = a.value("epsilon", c.adaptive.epsilon);
    c.adaptive.upper = a.value("upper", c.adaptive.upper);
    c.adaptive.lower = a.value("lower", c.adaptive.lower);
    c.adaptive.lookback = a.value("lookback", c.adaptive.lookback);
    c.adaptive.every = a.value("every", c.adaptive.every);
    c.adaptive.per_orbit = a.value("per_orbit", c.adaptive.per_orbit);
  }
  c.shimmed_couplers = doc.value("shimmed_couplers", c.shimmed_couplers);
  c.window = doc.value("window", c.window);
  if (doc.contains("sampler")) {
    const auto& s = doc.at("sampler");
    c.sampler.reads = s.value("reads", c.sampler.reads);
    c.sampler.sweeps = s.value("sweeps", c.sampler.sweeps);
    c.sampler.beta_initial = s.value("beta_initial", c.sampler.beta_initial);
    c.sampler.beta_final = s.value("beta_final", c.sampler.beta_final);
    c.sampler.seed = s.value("seed", c.sampler.seed);
    c.sampler.threads = s.value("threads", c.sampler.threads);
  }
  c.validate();
  return c;
}

ShimState ShimState::initial(const IsingModel& start, const ShimConfig& config) {
  ShimState s;
  s.fbo.assign(static_cast<std::size_t>(start.num_spins()), 0.0);
  s.couplings = start.coupling_values();
  s.fields.assign(start.fields().begin(), start.fields().end());
  s.alpha_phi = config.alpha_phi;
  s.alpha_j = config.alpha_j;
  s.alpha_h = config.alpha_h;
  return s;
}

std::string ShimState::to_json() const {
  ordered_json doc;
  doc["schema"] = 1;
  doc["iteration"] = iteration;
  doc["alpha_phi"] = alpha_phi;
  doc["alpha_j"] = alpha_j;
  doc["alpha_h"] = alpha_h;
  doc["clamp_events"] = clamp_events;
  doc["floor_events"] = floor_events;
  doc["fbo"] = fbo;
  doc["couplings"] = couplings;
  doc["fields"] = fields;
  // Rows of [orbit, multiplier].
  if (!phi_orbit_scale.empty()) doc["phi_orbit_scale"] = phi_orbit_scale;
  if (!j_orbit_scale.empty()) doc["j_orbit_scale"] = j_orbit_scale;
  if (!h_orbit_scale.empty()) doc["h_orbit_scale"] = h_orbit_scale;
  return doc.dump(1) + "\n";
}

ShimState ShimState::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (doc.value("schema", 1) != 1) throw std::invalid_argument("unsupported shim state schema");
  ShimState s;
  s.iteration = doc.at("iteration").get<int>();
  s.alpha_phi = doc.at("alpha_phi").get<double>();
  s.alpha_j = doc.at("alpha_j").get<double>();
  s.alpha_h = doc.at("alpha_h").get<double>();
  s.clamp_events = doc.value("clamp_events", std::size_t{0});
  s.floor_events = doc.value("floor_events", std::size_t{0});
  s.fbo = doc.at("fbo").get<std::vector<double>>();
  s.couplings = doc.at("couplings").get<std::vector<double>>();
  s.fields = doc.at("fields").get<std::vector<double>>();
  s.phi_orbit_scale = doc.value("phi_orbit_scale", std::map<int, double>{});
  s.j_orbit_scale = doc.value("j_orbit_scale", std::map<int, double>{});
  s.h_orbit_scale = doc.value("h_orbit_scale", std::map<int, double>{});
  return s;
}

void fbo_step(ShimState& state, std::span<const double> m, const Orbits& orbits) {
  check_size(m.size(), state.fbo.size(), "fbo_step");
  const auto targets = qubit_orbit_means(m, orbits);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double delta = m[i] - targets.at(orbits.qubit_orbit[i]);
    if (delta != 0.0) state.fbo[i] -= state.alpha_phi * orbit_scale(state.phi_orbit_scale, orbits.qubit_orbit[i]) * delta;
  }
}

void coupler_step(ShimState& state, std::span<const double> f, const Orbits& orbits, const ShimConfig& config,
                  const IsingModel& nominal) {
  check_size(f.size(), state.couplings.size(), "coupler_step");
  check_size(nominal.num_couplings(), state.couplings.size(), "coupler_step nominal");
  const auto selected =
      config.shimmed_couplers.empty() ? all_indices(f.size()) : config.shimmed_couplers;
  const auto targets = coupler_orbit_means(f, orbits);
  for (std::size_t k : selected) {
    const int orbit = orbits.coupler_orbit.at(k);
    double multiplier = 1.0 + state.alpha_j * orbit_scale(state.j_orbit_scale, orbit) * (f[k] - targets.at(orbit));
    if (multiplier < config.multiplier_floor) {
      multiplier = config.multiplier_floor;
      ++state.floor_events;
    }
    state.couplings[k] *= multiplier;
  }
  if (config.renormalize) {
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t k : selected) members[orbits.coupler_orbit[k]].push_back(k);
    const auto values = nominal.couplings();
    for (const auto& [orbit, list] : members) {
      double current = 0.0;
      double target = 0.0;
      for (std::size_t k : list) {
        current += state.couplings[k];
        target += values[k].value;
      }
      if (current == 0.0 || target == 0.0) {
        throw std::invalid_argument("coupler_step: orbit " + std::to_string(orbit) +
                                    " has zero mean coupling and cannot be renormalized");
      }
      const double scale = target / current;
      for (std::size_t k : list) state.couplings[k] *= scale;
    }
  }
  for (std::size_t k : selected) {
    const double clamped = std::clamp(state.couplings[k], config.coupling_min, config.coupling_max);
    if (clamped != state.couplings[k]) {
      state.couplings[k] = clamped;
      ++state.clamp_events;
    }
  }
}

void field_step(ShimState& state, std::span<const double> m, const Orbits& orbits, double hbar) {
  if (hbar == 0.0) throw std::invalid_argument("field_step: hbar must be nonzero; use the FBO shim instead");
  check_size(m.size(), state.fields.size(), "field_step");
  const auto targets = qubit_orbit_means(m, orbits);
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double delta = m[i] - targets.at(orbits.qubit_orbit[i]);
    // Positive h favours -1, so an excess of +1 is met with a larger h.
    state.fields[i] += state.alpha_h * orbit_scale(state.h_orbit_scale, orbits.qubit_orbit[i]) * delta;
    members[orbits.qubit_orbit[i]].push_back(i);
  }
  for (const auto& [orbit, list] : members) {
    double mean = 0.0;
    for (std::size_t i : list) mean += state.fields[i];
    mean /= static_cast<double>(list.size());
    for (std::size_t i : list) state.fields[i] += hbar - mean;
  }
}

std::vector<std::vector<double>> smooth_fields(const std::vector<std::vector<double>>& grid, double eps) {
  if (grid.size() < 3) throw std::invalid_argument("smooth_fields: need at least 3 field magnitudes");
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("smooth_fields: eps must lie in [0, 1)");
  for (const auto& row : grid) check_size(row.size(), grid.front().size(), "smooth_fields");
  auto out = grid;
  if (eps == 0.0) return out;
  for (std::size_t g = 1; g + 1 < grid.size(); ++g) {
    for (std::size_t i = 0; i < grid[g].size(); ++i) {
      out[g][i] = (1.0 - eps) * grid[g][i] + eps * (grid[g - 1][i] + grid[g + 1][i]) / 2.0;
    }
  }
  return out;
}

void damp_step(ShimState& state, double rho, const IsingModel& nominal) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("damp_step: rho must lie in [0, 1]");
  check_size(nominal.num_couplings(), state.couplings.size(), "damp_step");
  if (rho == 0.0) return;
  const auto values = nominal.couplings();
  for (std::size_t k = 0; k < state.couplings.size(); ++k) {
    const double target = values[k].value;
    state.couplings[k] = target + (1.0 - rho) * (state.couplings[k] - target);
  }
}

namespace {

const std::vector<std::vector<double>>& history_of(const ShimState& state, ShimQuantity which) {
  return which == ShimQuantity::fbo       ? state.history.fbo
         : which == ShimQuantity::coupler ? state.history.couplings
                                          : state.history.fields;
}

// The last lookback + 1 rows, restricted to `terms` when given.
std::vector<std::vector<double>> recent_rows(const std::vector<std::vector<double>>& source,
                                             std::size_t lookback, std::span<const std::size_t> terms) {
  if (source.size() < lookback + 1) {
    throw std::invalid_argument("adapt_step_size: need " + std::to_string(lookback + 1) + " history entries");
  }
  std::vector<std::vector<double>> recent;
  for (std::size_t t = source.size() - lookback - 1; t < source.size(); ++t) {
    if (terms.empty()) {
      recent.push_back(source[t]);
    } else {
      std::vector<double> row;
      for (std::size_t k : terms) row.push_back(source[t].at(k));
      recent.push_back(std::move(row));
    }
  }
  return recent;
}

void rescale(double& alpha, double b, const AdaptiveConfig& config) {
  if (b > config.upper) {
    alpha *= 1.0 + config.epsilon;
  } else if (b < config.lower) {
    alpha /= 1.0 + config.epsilon;
  }
}

}  // namespace

std::optional<double> adapt_step_size(ShimState& state, ShimQuantity which, const AdaptiveConfig& config,
                                      std::span<const std::size_t> terms) {
  const auto b = fit_walk_exponent(recent_rows(history_of(state, which), config.lookback, terms), config.lookback);
  if (!b) return b;
  double& alpha = which == ShimQuantity::fbo       ? state.alpha_phi
                  : which == ShimQuantity::coupler ? state.alpha_j
                                                   : state.alpha_h;
  rescale(alpha, *b, config);
  return b;
}

std::map<int, std::optional<double>> adapt_orbit_step_sizes(ShimState& state, ShimQuantity which,
                                                            const Orbits& orbits, const AdaptiveConfig& config,
                                                            std::span<const std::size_t> terms) {
  const auto& labels = which == ShimQuantity::coupler ? orbits.coupler_orbit : orbits.qubit_orbit;
  const auto indices = terms.empty() ? all_indices(labels.size()) : std::vector<std::size_t>(terms.begin(), terms.end());
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t k : indices) members[labels.at(k)].push_back(k);
  auto& scales = which == ShimQuantity::fbo       ? state.phi_orbit_scale
                 : which == ShimQuantity::coupler ? state.j_orbit_scale
                                                  : state.h_orbit_scale;
  const auto& source = history_of(state, which);
  std::map<int, std::optional<double>> out;
  for (const auto& [orbit, list] : members) {
    const auto b = fit_walk_exponent(recent_rows(source, config.lookback, list), config.lookback);
    out[orbit] = b;
    if (!b) continue;
    auto [it, inserted] = scales.try_emplace(orbit, 1.0);
    rescale(it->second, *b, config);
  }
  return out;
}

namespace {

void write_rows(std::ostream& out, int iteration, const char* kind, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    out << iteration << ',' << kind << ',' << k << ',' << format_double(values[k]) << '\n';
  }
}

std::vector<std::complex<double>> read_psi(const SampleSet& samples, const PsiReadout& readout) {
  const int logical_spins = static_cast<int>(readout.coloring.color.size());
  std::vector<std::complex<double>> out;
  for (int copy = 0; copy < readout.copies; ++copy) {
    SampleSet part(samples.reads(), readout.spins_per_copy);
    for (int r = 0; r < samples.reads(); ++r) {
      const auto row = samples.read(r).subspan(static_cast<std::size_t>(copy) * readout.spins_per_copy,
                                               static_cast<std::size_t>(readout.spins_per_copy));
      std::copy(row.begin(), row.end(), part.read(r).begin());
    }
    const auto psi = order_parameter(decode_chains(part, readout.logical_of, logical_spins), readout.coloring).psi;
    out.insert(out.end(), psi.begin(), psi.end());
  }
  return out;
}

}  // namespace

RunOutput run_loop(const ShimProblem& problem, const ShimConfig& config, int iterations,
                   const RunStreams& streams, const ShimState* warm_start) {
  config.validate();
  if (iterations < 0) throw std::invalid_argument("run_loop: iterations must be >= 0");
  const IsingModel& nominal = problem.nominal;
  const auto n = static_cast<std::size_t>(nominal.num_spins());
  check_size(problem.orbits.qubit_orbit.size(), n, "run_loop orbits");
  check_size(problem.orbits.coupler_orbit.size(), nominal.num_couplings(), "run_loop coupler orbits");
  if (problem.psi) {
    check_size(static_cast<std::size_t>(problem.psi->spins_per_copy) * problem.psi->copies, n, "run_loop psi");
  }

  RunOutput out;
  out.state = warm_start != nullptr ? *warm_start : ShimState::initial(problem.initial.value_or(nominal), config);
  ShimState& state = out.state;
  check_size(state.fbo.size(), n, "run_loop state fbo");
  check_size(state.fields.size(), n, "run_loop state fields");
  check_size(state.couplings.size(), nominal.num_couplings(), "run_loop state couplings");
  NoiseModel noise = problem.noise;
  const auto shimmed = config.shimmed_couplers.empty() ? all_indices(nominal.num_couplings())
                                                       : config.shimmed_couplers;

  if (streams.series != nullptr) *streams.series << "iter,kind,id,value\n";
  if (streams.psi != nullptr) *streams.psi << "iter,read,re,im\n";

  for (int step = 0; step < iterations; ++step) {
    const int t = state.iteration;
    const IsingModel programmed = nominal.with_fields(state.fields).with_coupling_values(state.couplings);
    SamplerParams params = config.sampler;
    params.seed = derive_seed(config.sampler.seed, static_cast<std::uint64_t>(t));
    SampleSet samples = sample(programmed, state.fbo, noise, params, &nominal);
    samples.provenance.iteration = t;
    const auto m = magnetizations(samples);
    const auto f = frustrations(samples, nominal);

    auto& h = state.history;
    h.magnetization.push_back(m);
    h.frustration.push_back(f);
    h.fbo.push_back(state.fbo);
    h.couplings.push_back(state.couplings);
    h.fields.push_back(state.fields);

    if (streams.series != nullptr) {
      auto& os = *streams.series;
      write_rows(os, t, "m", m);
      write_rows(os, t, "f", f);
      write_rows(os, t, "phi", state.fbo);
      write_rows(os, t, "J", state.couplings);
      if (config.stages.field) write_rows(os, t, "h", state.fields);
      if (h.size() >= config.window) {
        const auto [sm, sf] = window_dispersion(h, problem.orbits, config.window, h.size() - 1);
        os << t << ",sigma_m,0," << format_double(sm) << '\n';
        os << t << ",sigma_f,0," << format_double(sf) << '\n';
      }
    }
    if (problem.psi) {
      out.psi.push_back(read_psi(samples, *problem.psi));
      if (streams.psi != nullptr) {
        const auto& psi = out.psi.back();
        for (std::size_t r = 0; r < psi.size(); ++r) {
          *streams.psi << t << ',' << r << ',' << format_double(psi[r].real()) << ','
                       << format_double(psi[r].imag()) << '\n';
        }
      }
    }

    const auto& st = config.stages;
    if (StageSchedule::active(st.fbo, t)) fbo_step(state, m, problem.orbits);
    if (StageSchedule::active(st.coupler, t)) coupler_step(state, f, problem.orbits, config, nominal);
    if (StageSchedule::active(st.field, t)) field_step(state, m, problem.orbits, config.hbar);
    if (StageSchedule::active(st.damping, t)) damp_step(state, config.rho, nominal);

    const auto& ad = config.adaptive;
    if (ad.enabled && t % ad.every == 0) {
      const auto warm = [&](const std::optional<int>& start) {
        return start.has_value() && t - *start >= static_cast<int>(ad.lookback) &&
               h.size() >= ad.lookback + 1;
      };
      const auto adapt = [&](ShimQuantity which, std::span<const std::size_t> terms) {
        if (ad.per_orbit) {
          adapt_orbit_step_sizes(state, which, problem.orbits, ad, terms);
        } else {
          adapt_step_size(state, which, ad, terms);
        }
      };
      if (warm(st.fbo)) adapt(ShimQuantity::fbo, {});
      if (warm(st.coupler)) adapt(ShimQuantity::coupler, shimmed);
      if (warm(st.field)) adapt(ShimQuantity::field, {});
    }
    ++state.iteration;
  }
  return out;
}

EnsembleOutput ensemble_fbo_shim(std::span<const IsingModel> realizations, const NoiseModel& noise,
                                 const ShimConfig& config, int cycles) {
  config.validate();
  if (realizations.empty()) throw std::invalid_argument("ensemble_fbo_shim: no realizations");
  const int n = realizations.front().num_spins();
  for (const auto& model : realizations) {
    if (model.num_spins() != n) throw std::invalid_argument("ensemble_fbo_shim: realizations differ in size");
    if (std::ranges::any_of(model.fields(), [](double x) { return x != 0.0; })) {
      throw std::invalid_argument("ensemble_fbo_shim: realizations must have zero fields");
    }
  }
  EnsembleOutput out;
  out.fbo.assign(static_cast<std::size_t>(n), 0.0);
  NoiseModel live = noise;
  std::uint64_t call = 0;
  for (int cycle = 0; cycle < cycles; ++cycle) {
    for (const auto& model : realizations) {
      SamplerParams params = config.sampler;
      params.seed = derive_seed(config.sampler.seed, call++);
      const auto m = magnetizations(sample(model, out.fbo, live, params));
      // Zero field: every qubit target is 0.
      for (int i = 0; i < n; ++i) out.fbo[i] -= config.alpha_phi * m[i];
      out.magnetization.push_back(m);
    }
  }
  return out;
}

}  // namespace isingshim
