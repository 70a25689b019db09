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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "isingshim/automorphism.hpp"
#include "isingshim/embedding.hpp"
#include "isingshim/ising_model.hpp"

namespace isingshim {

// Equivalence classes of qubits and couplers that an ideal sampler treats
// identically, plus the opposite relation between classes. Ids are the
// smallest member index. An orbit absent from an opposite map has no
// opposite; an orbit mapped to itself is self-opposite.
struct Orbits {
  std::vector<int> qubit_orbit;    // spin -> orbit id
  std::vector<int> coupler_orbit;  // coupling index -> orbit id
  std::map<int, int> opposite_qubit;
  std::map<int, int> opposite_coupler;

  std::optional<int> opposite_of_qubit_orbit(int orbit) const;
  std::optional<int> opposite_of_coupler_orbit(int orbit) const;
  std::size_t num_qubit_orbits() const;
  std::size_t num_coupler_orbits() const;

  bool operator==(const Orbits&) const = default;
};

// Orbits from the automorphisms of the signed model. The two couplers of a
// signed copy that differ by a global flip are merged, then orbits are
// restricted to the plain spins and couplers. A coupler orbit is opposite to
// the orbit holding the coupler with one endpoint negated.
Orbits ising_orbits(const IsingModel& model, const AutomorphismOptions& options = {});

// Orbits on the programmed device model: every copy of a source qubit
// (coupler) joins that source orbit. Coupler indices follow
// program_embeddings(embeddings.source, embeddings).
Orbits merge_embedding_orbits(const Orbits& source_orbits, const EmbeddingSet& embeddings);

// User-declared classes. Every spin and coupling must appear exactly once;
// a coupler class may not mix magnitudes |J|. Opposite pairs name class
// positions; (a, a) declares class a self-opposite.
struct OrbitOverride {
  std::vector<std::vector<int>> qubit_classes;
  std::vector<std::vector<std::size_t>> coupler_classes;
  std::vector<std::pair<std::size_t, std::size_t>> opposite_qubit_classes;
  std::vector<std::pair<std::size_t, std::size_t>> opposite_coupler_classes;
};

Orbits override_orbits(const IsingModel& model, const OrbitOverride& classes);

// One class per qubit and per coupler, no opposites.
Orbits singleton_orbits(const IsingModel& model);

// JSON document with qubit_orbits, coupler_orbits ([i, j, orbit] rows),
// opposite_qubit and opposite_coupler.
std::string orbits_to_json(const IsingModel& model, const Orbits& orbits);

}  // namespace isingshim
