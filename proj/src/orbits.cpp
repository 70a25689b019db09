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

#include "isingshim/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "isingshim/disjoint_set.hpp"

namespace isingshim {

namespace {

std::size_t count_distinct(const std::vector<int>& ids) {
  return std::set<int>(ids.begin(), ids.end()).size();
}

std::optional<int> lookup(const std::map<int, int>& map, int key) {
  auto it = map.find(key);
  if (it == map.end()) return std::nullopt;
  return it->second;
}

long long quantize(double value) { return std::llround(value / kLabelResolution); }

// Smallest element of each class, keyed by class root, over `members`.
std::map<int, int> smallest_member(DisjointSet& classes, const std::vector<int>& members) {
  std::map<int, int> out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const int root = classes.find(members[k]);
    out.try_emplace(root, static_cast<int>(k));
  }
  return out;
}

// Unites x' with y' whenever x and y share a class, where ' is `partner`.
// Repeats until stable.
template <typename Partner>
void close_under(DisjointSet& classes, int size, Partner partner) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < size; ++x) {
      if (classes.unite(partner(x), partner(classes.find(x)))) changed = true;
    }
  }
}

}  // namespace

std::optional<int> Orbits::opposite_of_qubit_orbit(int orbit) const {
  return lookup(opposite_qubit, orbit);
}

std::optional<int> Orbits::opposite_of_coupler_orbit(int orbit) const {
  return lookup(opposite_coupler, orbit);
}

std::size_t Orbits::num_qubit_orbits() const { return count_distinct(qubit_orbit); }

std::size_t Orbits::num_coupler_orbits() const { return count_distinct(coupler_orbit); }

Orbits ising_orbits(const IsingModel& model, const AutomorphismOptions& options) {
  const SignedIsingModel signed_model = build_signed(model);
  const LabeledGraph graph = signed_to_labeled_graph(signed_model);
  const auto generators = automorphism_generators(graph, options);
  const OrbitPartition partition = vertex_and_edge_orbits(graph, generators);

  const int n = model.num_spins();
  const IsingModel& base = signed_model.base;
  const int num_signed = static_cast<int>(base.num_couplings());
  auto bar = [n](int v) { return v < n ? v + n : v - n; };
  auto index = [&base](int a, int b) { return static_cast<int>(*base.coupling_index(a, b)); };

  DisjointSet spins(2 * n);
  for (int v = 0; v < 2 * n; ++v) spins.unite(v, partition.vertex_orbit[v]);
  DisjointSet couplers(num_signed);
  for (int c = 0; c < num_signed; ++c) couplers.unite(c, partition.vertex_orbit[2 * n + c] - 2 * n);
  // A global flip exchanges (a, b) with (a', b').
  for (int c = 0; c < num_signed; ++c) {
    const auto& sc = base.couplings()[c];
    couplers.unite(c, index(bar(sc.i), bar(sc.j)));
  }
  // Negating one endpoint negates the coupler; keep that relation well
  // defined on classes.
  auto negated = [&](int c) {
    const auto& sc = base.couplings()[c];
    return index(bar(sc.i), sc.j);
  };
  close_under(spins, 2 * n, bar);
  close_under(couplers, num_signed, negated);

  Orbits out;
  std::vector<int> plain_spins(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) plain_spins[i] = signed_model.plain_of[i];
  const auto spin_id = smallest_member(spins, plain_spins);
  out.qubit_orbit.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.qubit_orbit[i] = spin_id.at(spins.find(plain_spins[i]));
    if (auto opp = lookup(spin_id, spins.find(signed_model.bar_of[i]))) {
      out.opposite_qubit[out.qubit_orbit[i]] = *opp;
    }
  }

  const auto couplings = model.couplings();
  std::vector<int> plain_couplers(couplings.size());
  for (std::size_t k = 0; k < couplings.size(); ++k) {
    plain_couplers[k] = index(signed_model.plain_of[couplings[k].i], signed_model.plain_of[couplings[k].j]);
  }
  const auto coupler_id = smallest_member(couplers, plain_couplers);
  out.coupler_orbit.resize(couplings.size());
  for (std::size_t k = 0; k < couplings.size(); ++k) {
    out.coupler_orbit[k] = coupler_id.at(couplers.find(plain_couplers[k]));
    if (auto opp = lookup(coupler_id, couplers.find(negated(plain_couplers[k])))) {
      out.opposite_coupler[out.coupler_orbit[k]] = *opp;
    }
  }
  return out;
}

Orbits merge_embedding_orbits(const Orbits& source_orbits, const EmbeddingSet& embeddings) {
  const IsingModel& source = embeddings.source;
  if (source_orbits.qubit_orbit.size() != static_cast<std::size_t>(source.num_spins()) ||
      source_orbits.coupler_orbit.size() != source.num_couplings()) {
    throw std::invalid_argument("orbits do not match the embedded model");
  }
  const IsingModel physical = program_embeddings(source, embeddings);

  Orbits out;
  out.qubit_orbit.assign(static_cast<std::size_t>(physical.num_spins()), -1);
  out.coupler_orbit.assign(physical.num_couplings(), -1);
  std::map<int, int> qubit_id;    // source orbit -> physical id
  std::map<int, int> coupler_id;
  for (const auto& map : embeddings.maps) {
    for (int s = 0; s < source.num_spins(); ++s) {
      auto [it, fresh] = qubit_id.try_emplace(source_orbits.qubit_orbit[s], map[s]);
      if (!fresh) it->second = std::min(it->second, map[s]);
    }
    for (std::size_t c = 0; c < source.num_couplings(); ++c) {
      const auto& sc = source.couplings()[c];
      const int k = static_cast<int>(*physical.coupling_index(map[sc.i], map[sc.j]));
      auto [it, fresh] = coupler_id.try_emplace(source_orbits.coupler_orbit[c], k);
      if (!fresh) it->second = std::min(it->second, k);
    }
  }
  for (const auto& map : embeddings.maps) {
    for (int s = 0; s < source.num_spins(); ++s) {
      out.qubit_orbit[map[s]] = qubit_id.at(source_orbits.qubit_orbit[s]);
    }
    for (std::size_t c = 0; c < source.num_couplings(); ++c) {
      const auto& sc = source.couplings()[c];
      out.coupler_orbit[*physical.coupling_index(map[sc.i], map[sc.j])] =
          coupler_id.at(source_orbits.coupler_orbit[c]);
    }
  }
  // Qubits outside every copy stay in their own class.
  for (int q = 0; q < physical.num_spins(); ++q) {
    if (out.qubit_orbit[q] < 0) out.qubit_orbit[q] = q;
  }
  for (const auto& [from, to] : source_orbits.opposite_qubit) {
    if (qubit_id.contains(from) && qubit_id.contains(to)) {
      out.opposite_qubit[qubit_id.at(from)] = qubit_id.at(to);
    }
  }
  for (const auto& [from, to] : source_orbits.opposite_coupler) {
    if (coupler_id.contains(from) && coupler_id.contains(to)) {
      out.opposite_coupler[coupler_id.at(from)] = coupler_id.at(to);
    }
  }
  return out;
}

Orbits override_orbits(const IsingModel& model, const OrbitOverride& classes) {
  const auto couplings = model.couplings();
  Orbits out;
  out.qubit_orbit.assign(static_cast<std::size_t>(model.num_spins()), -1);
  out.coupler_orbit.assign(couplings.size(), -1);

  std::vector<int> qubit_ids;
  for (const auto& members : classes.qubit_classes) {
    if (members.empty()) throw std::invalid_argument("empty qubit class");
    const int id = *std::min_element(members.begin(), members.end());
    for (int q : members) {
      if (q < 0 || q >= model.num_spins()) throw std::invalid_argument("qubit class member out of range");
      if (out.qubit_orbit[q] >= 0) throw std::invalid_argument("qubit in two classes");
      if (quantize(model.field(q)) != quantize(model.field(id))) {
        throw std::invalid_argument("qubit class mixes different fields");
      }
      out.qubit_orbit[q] = id;
    }
    qubit_ids.push_back(id);
  }
  std::vector<int> coupler_ids;
  for (const auto& members : classes.coupler_classes) {
    if (members.empty()) throw std::invalid_argument("empty coupler class");
    const std::size_t first = *std::min_element(members.begin(), members.end());
    if (first >= couplings.size()) throw std::invalid_argument("coupler class member out of range");
    for (std::size_t c : members) {
      if (c >= couplings.size()) throw std::invalid_argument("coupler class member out of range");
      if (out.coupler_orbit[c] >= 0) throw std::invalid_argument("coupler in two classes");
      if (quantize(std::abs(couplings[c].value)) != quantize(std::abs(couplings[first].value))) {
        throw std::invalid_argument("coupler class mixes different |J|");
      }
      out.coupler_orbit[c] = static_cast<int>(first);
    }
    coupler_ids.push_back(static_cast<int>(first));
  }
  if (std::count(out.qubit_orbit.begin(), out.qubit_orbit.end(), -1) != 0 ||
      std::count(out.coupler_orbit.begin(), out.coupler_orbit.end(), -1) != 0) {
    throw std::invalid_argument("classes do not cover every qubit and coupler");
  }
  for (auto [a, b] : classes.opposite_qubit_classes) {
    const int ia = qubit_ids.at(a);
    const int ib = qubit_ids.at(b);
    if (quantize(model.field(ia)) != -quantize(model.field(ib))) {
      throw std::invalid_argument("opposite qubit classes need negated fields");
    }
    out.opposite_qubit[ia] = ib;
    out.opposite_qubit[ib] = ia;
  }
  for (auto [a, b] : classes.opposite_coupler_classes) {
    const int ia = coupler_ids.at(a);
    const int ib = coupler_ids.at(b);
    if (quantize(couplings[ia].value) != -quantize(couplings[ib].value)) {
      throw std::invalid_argument("opposite coupler classes need negated couplings");
    }
    out.opposite_coupler[ia] = ib;
    out.opposite_coupler[ib] = ia;
  }
  return out;
}

Orbits singleton_orbits(const IsingModel& model) {
  Orbits out;
  for (int q = 0; q < model.num_spins(); ++q) out.qubit_orbit.push_back(q);
  for (std::size_t c = 0; c < model.num_couplings(); ++c) out.coupler_orbit.push_back(static_cast<int>(c));
  return out;
}

std::string orbits_to_json(const IsingModel& model, const Orbits& orbits) {
  nlohmann::ordered_json doc;
  doc["qubit_orbits"] = orbits.qubit_orbit;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < model.num_couplings(); ++c) {
    const auto& sc = model.couplings()[c];
    rows.push_back({sc.i, sc.j, orbits.coupler_orbit.at(c)});
  }
  doc["coupler_orbits"] = rows;
  auto as_object = [](const std::map<int, int>& map) {
    auto obj = nlohmann::ordered_json::object();
    for (auto [from, to] : map) obj[std::to_string(from)] = to;
    return obj;
  };
  doc["opposite_qubit"] = as_object(orbits.opposite_qubit);
  doc["opposite_coupler"] = as_object(orbits.opposite_coupler);
  return doc.dump(2) + "\n";
}

}  // namespace isingshim
