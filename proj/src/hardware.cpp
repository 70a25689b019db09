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

#include "isingshim/hardware.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <stdexcept>
#include <utility>

namespace isingshim {

namespace {

void fill_cells(HardwareGraph& hw, std::span<const CellCoord> cell_of) {
  for (int q = 0; q < static_cast<int>(cell_of.size()); ++q) hw.cells[cell_of[q]].push_back(q);
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last) {
      throw std::invalid_argument("bad hardware size '" + text + "'");
    }
    out.push_back(value);
    pos = end + 1;
  }
  return out;
}

}  // namespace

std::string HardwareGraph::spec() const {
  std::string out = family + ":";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(shape[k]);
  }
  return out;
}

HardwareGraph make_chimera(int m, int n, int t) {
  if (m < 1 || n < 1 || t < 1) throw std::invalid_argument("chimera sizes must be >= 1");
  auto index = [=](int i, int j, int u, int k) { return ((i * n + j) * 2 + u) * t + k; };
  std::vector<std::pair<int, int>> edges;
  std::vector<CellCoord> cell_of(static_cast<std::size_t>(2 * m * n * t));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int u = 0; u < 2; ++u) {
        for (int k = 0; k < t; ++k) cell_of[index(i, j, u, k)] = {i, j};
      }
      for (int a = 0; a < t; ++a) {
        for (int b = 0; b < t; ++b) edges.emplace_back(index(i, j, 0, a), index(i, j, 1, b));
        if (i + 1 < m) edges.emplace_back(index(i, j, 0, a), index(i + 1, j, 0, a));
        if (j + 1 < n) edges.emplace_back(index(i, j, 1, a), index(i, j + 1, 1, a));
      }
    }
  }
  HardwareGraph hw;
  hw.family = "chimera";
  hw.shape = {m, n, t};
  hw.graph = Graph(static_cast<int>(cell_of.size()), edges);
  hw.operable.assign(cell_of.size(), true);
  hw.cell_rows = m;
  hw.cell_cols = n;
  fill_cells(hw, cell_of);
  return hw;
}

HardwareGraph make_pegasus(int m) {
  if (m < 2) throw std::invalid_argument("pegasus size must be >= 2");
  // Segment start offsets within a 12-unit tile, by k.
  static constexpr std::array<int, 12> kVerticalOffset{2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6};
  static constexpr std::array<int, 12> kHorizontalOffset{6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10};
  const int span = m - 1;
  auto index = [=](int u, int w, int k, int z) { return z + span * (k + 12 * (w + m * u)); };
  const int num_qubits = 24 * m * span;

  std::vector<std::pair<int, int>> edges;
  std::vector<CellCoord> cell_of(static_cast<std::size_t>(num_qubits));
  for (int u = 0; u < 2; ++u) {
    const auto& offset = u == 0 ? kVerticalOffset : kHorizontalOffset;
    for (int w = 0; w < m; ++w) {
      for (int k = 0; k < 12; ++k) {
        for (int z = 0; z < span; ++z) {
          const int q = index(u, w, k, z);
          // Segment runs across [start, start + 12) along its axis at
          // perpendicular coordinate 12 w + k.
          const int start = 12 * z + offset[k];
          const int along = (start + 6) / 12;
          cell_of[q] = u == 0 ? CellCoord{along, w} : CellCoord{w, along};
          if (z + 1 < span) edges.emplace_back(q, index(u, w, k, z + 1));
          if (k % 2 == 0) edges.emplace_back(q, index(u, w, k + 1, z));
          if (u != 0) continue;
          // Horizontal segments crossing this vertical one.
          const int x = 12 * w + k;
          for (int y = start; y < start + 12; ++y) {
            const int hw_w = y / 12;
            const int hk = y % 12;
            if (hw_w >= m) continue;
            const int shifted = x - kHorizontalOffset[hk];
            if (shifted < 0) continue;
            const int hz = shifted / 12;
            if (hz >= span) continue;
            edges.emplace_back(q, index(1, hw_w, hk, hz));
          }
        }
      }
    }
  }
  HardwareGraph hw;
  hw.family = "pegasus";
  hw.shape = {m};
  hw.graph = Graph(num_qubits, edges);
  hw.operable.assign(static_cast<std::size_t>(num_qubits), true);
  hw.cell_rows = m;
  hw.cell_cols = m;
  fill_cells(hw, cell_of);
  return hw;
}

HardwareGraph mask_qubits(const HardwareGraph& hardware, std::span<const int> dead) {
  HardwareGraph out = hardware;
  for (int q : dead) {
    if (q < 0 || q >= hardware.num_qubits()) throw std::invalid_argument("dead qubit out of range");
    out.operable[q] = false;
  }
  std::vector<std::pair<int, int>> kept;
  for (auto [u, v] : hardware.graph.edges()) {
    if (out.operable[u] && out.operable[v]) kept.emplace_back(u, v);
  }
  out.graph = Graph(hardware.num_qubits(), kept);
  return out;
}

HardwareGraph parse_hardware(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("hardware spec needs family:size");
  const std::string family = spec.substr(0, colon);
  const auto sizes = parse_ints(spec.substr(colon + 1));
  if (family == "pegasus" && sizes.size() == 1) return make_pegasus(sizes[0]);
  if (family == "chimera" && sizes.size() == 1) return make_chimera(sizes[0], sizes[0], 4);
  if (family == "chimera" && sizes.size() == 3) return make_chimera(sizes[0], sizes[1], sizes[2]);
  throw std::invalid_argument("unknown hardware spec '" + spec + "'");
}

}  // namespace isingshim
