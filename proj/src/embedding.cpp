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

#include "isingshim/embedding.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"
#include "isingshim/seeding.hpp"
#include "isingshim/subgraph.hpp"

namespace isingshim {

void validate_embeddings(const EmbeddingSet& embeddings, const HardwareGraph* hardware) {
  const int n = embeddings.source.num_spins();
  if (hardware != nullptr && hardware->num_qubits() != embeddings.num_qubits) {
    throw std::invalid_argument("embedding set and hardware disagree on qubit count");
  }
  std::vector<bool> used(static_cast<std::size_t>(embeddings.num_qubits), false);
  for (const auto& map : embeddings.maps) {
    if (static_cast<int>(map.size()) != n) throw std::invalid_argument("embedding has wrong length");
    for (int q : map) {
      if (q < 0 || q >= embeddings.num_qubits) throw std::invalid_argument("qubit out of range");
      if (used[q]) throw std::invalid_argument("embeddings overlap or are not injective");
      used[q] = true;
      if (hardware != nullptr && !hardware->operable[q]) {
        throw std::invalid_argument("embedding uses an inoperable qubit");
      }
    }
    if (hardware == nullptr) continue;
    for (const auto& c : embeddings.source.couplings()) {
      if (!hardware->graph.has_edge(map[c.i], map[c.j])) {
        throw std::invalid_argument("coupling does not land on a hardware edge");
      }
    }
  }
}

EmbeddingSet raster_embed(const IsingModel& pattern, const HardwareGraph& hardware,
                          const RasterOptions& options) {
  if (options.block_rows < 1 || options.block_cols < 1 || options.restarts < 1) {
    throw std::invalid_argument("block size and restarts must be positive");
  }
  EmbeddingSet result{pattern, {}, hardware.num_qubits()};
  const Graph pattern_graph = interaction_graph(pattern);
  if (pattern.num_spins() == 0) return result;
  std::vector<bool> used(static_cast<std::size_t>(hardware.num_qubits()), false);
  const int rows = std::max(1, hardware.cell_rows - options.block_rows + 1);
  const int cols = std::max(1, hardware.cell_cols - options.block_cols + 1);
  SubgraphOptions search;
  search.limit = 1;
  search.node_budget = options.node_budget;
  search.seed = options.seed;
  for (int r0 = 0; r0 < rows; ++r0) {
    for (int c0 = 0; c0 < cols; ++c0) {
      while (result.size() < options.max_embeddings) {
        std::vector<int> window;
        for (int r = r0; r < r0 + options.block_rows; ++r) {
          for (int c = c0; c < c0 + options.block_cols; ++c) {
            auto it = hardware.cells.find({r, c});
            if (it == hardware.cells.end()) continue;
            for (int q : it->second) {
              if (hardware.operable[q] && !used[q]) window.push_back(q);
            }
          }
        }
        if (static_cast<int>(window.size()) < pattern.num_spins()) break;
        std::sort(window.begin(), window.end());
        const Graph target = hardware.graph.induced(window);
        SubgraphResult found;
        for (int attempt = 0; attempt < options.restarts && found.maps.empty(); ++attempt) {
          search.seed = attempt == 0 ? options.seed : derive_seed(options.seed, static_cast<std::uint64_t>(attempt));
          found = find_subgraph(pattern_graph, target, search);
        }
        if (found.maps.empty()) break;
        std::vector<int> map;
        for (int local : found.maps.front()) {
          map.push_back(window[local]);
          used[window[local]] = true;
        }
        result.maps.push_back(std::move(map));
      }
    }
  }
  return result;
}

IsingModel program_embeddings(const IsingModel& model, const EmbeddingSet& embeddings) {
  if (model.num_spins() != embeddings.source.num_spins()) {
    throw std::invalid_argument("model does not match embedding source");
  }
  validate_embeddings(embeddings);
  std::vector<double> fields(static_cast<std::size_t>(embeddings.num_qubits), 0.0);
  std::vector<Coupling> couplings;
  couplings.reserve(model.num_couplings() * embeddings.size());
  for (const auto& map : embeddings.maps) {
    for (int s = 0; s < model.num_spins(); ++s) fields[map[s]] = model.field(s);
    for (const auto& c : model.couplings()) couplings.push_back({map[c.i], map[c.j], c.value});
  }
  return IsingModel(embeddings.num_qubits, std::move(fields), std::move(couplings));
}

CompactEmbedding compact(const EmbeddingSet& embeddings) {
  const int n = embeddings.source.num_spins();
  CompactEmbedding out;
  out.embeddings.source = embeddings.source;
  out.embeddings.num_qubits = n * static_cast<int>(embeddings.size());
  for (std::size_t k = 0; k < embeddings.size(); ++k) {
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      map[s] = static_cast<int>(k) * n + s;
      out.hardware_qubit.push_back(embeddings.maps[k].at(static_cast<std::size_t>(s)));
    }
    out.embeddings.maps.push_back(std::move(map));
  }
  return out;
}

std::string maps_to_json(const std::vector<std::vector<int>>& maps) {
  return nlohmann::json(maps).dump() + "\n";
}

std::vector<std::vector<int>> maps_from_json(const std::string& text) {
  return nlohmann::json::parse(text).get<std::vector<std::vector<int>>>();
}

}  // namespace isingshim
