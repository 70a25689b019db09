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
#include <limits>
#include <string>
#include <vector>

#include "isingshim/hardware.hpp"
#include "isingshim/ising_model.hpp"

namespace isingshim {

// Disjoint copies of `source` on a device with `num_qubits` qubits;
// maps[k][spin] is the qubit hosting `spin` in copy k.
struct EmbeddingSet {
  IsingModel source;
  std::vector<std::vector<int>> maps;
  int num_qubits = 0;

  std::size_t size() const noexcept { return maps.size(); }
};

// Throws std::invalid_argument unless every map is injective, the maps are
// pairwise disjoint, and (when `hardware` is given) every source coupling
// lands on a hardware edge between operable qubits.
void validate_embeddings(const EmbeddingSet& embeddings, const HardwareGraph* hardware = nullptr);

struct RasterOptions {
  int block_rows = 2;
  int block_cols = 2;
  std::uint64_t seed = 0;
  // Per find_subgraph call.
  std::uint64_t node_budget = 200'000;
  // Searches per window, each with its own derived seed, before moving on.
  int restarts = 1;
  std::size_t max_embeddings = std::numeric_limits<std::size_t>::max();
};

// Greedy packing: scans block_rows x block_cols windows of cells in row-major
// order (stride one cell) and, inside each, repeatedly searches the operable
// unused qubits for one more copy of `pattern`, keeping every copy found.
EmbeddingSet raster_embed(const IsingModel& pattern, const HardwareGraph& hardware,
                          const RasterOptions& options = {});

// Disjoint union of the copies on the device's qubits. Unused qubits get no
// field and no couplings. Physical couplings are ordered by qubit pair.
IsingModel program_embeddings(const IsingModel& model, const EmbeddingSet& embeddings);

// The same copies renumbered densely: copy k, spin s becomes qubit
// k * N + s. hardware_qubit[compact qubit] recovers the device qubit.
struct CompactEmbedding {
  EmbeddingSet embeddings;
  std::vector<int> hardware_qubit;
};

CompactEmbedding compact(const EmbeddingSet& embeddings);

// Embedding file: a JSON list of integer lists.
std::string maps_to_json(const std::vector<std::vector<int>>& maps);
std::vector<std::vector<int>> maps_from_json(const std::string& text);

}  // namespace isingshim
