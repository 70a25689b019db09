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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "isingshim/embedding.hpp"
#include "isingshim/hardware.hpp"
#include "isingshim/model_generators.hpp"
#include "isingshim/seeding.hpp"

using namespace isingshim;

namespace {

int operable_count(const HardwareGraph& hw) {
  return static_cast<int>(std::ranges::count(hw.operable, true));
}

int max_degree(const HardwareGraph& hw) {
  int best = 0;
  for (int q = 0; q < hw.num_qubits(); ++q) best = std::max(best, hw.graph.degree(q));
  return best;
}

}  // namespace

TEST_CASE("chimera counts") {
  for (auto [m, n, t] : {std::tuple{1, 1, 4}, {2, 2, 4}, {3, 2, 4}, {2, 3, 2}}) {
    const auto hw = make_chimera(m, n, t);
    CHECK(hw.num_qubits() == 2 * m * n * t);
    CHECK(hw.graph.num_edges() ==
          static_cast<std::size_t>(m * n * t * t + (m - 1) * n * t + m * (n - 1) * t));
  }
  CHECK(make_chimera(2, 2, 4).graph.num_edges() == 80);
  const auto hw = make_chimera(2, 2, 4);
  CHECK(hw.cells.size() == 4);
  CHECK(hw.spec() == "chimera:2,2,4");
  CHECK(parse_hardware("chimera:3").num_qubits() == 72);
}

TEST_CASE("pegasus counts") {
  // Reference values from the published Pegasus generator, full graph.
  const std::vector<std::tuple<int, int, std::size_t>> expected{
      {2, 48, 168}, {3, 144, 720}, {4, 288, 1632}};
  for (const auto& [m, qubits, edges] : expected) {
    const auto hw = make_pegasus(m);
    CHECK(operable_count(hw) == qubits);
    CHECK(hw.graph.num_edges() == edges);
  }
  const auto big = parse_hardware("pegasus:16");
  CHECK(operable_count(big) == 5760);
  CHECK(big.graph.num_edges() == 40656);
  CHECK(max_degree(big) == 15);
  CHECK(big.cell_rows == 16);
  CHECK_THROWS_AS(parse_hardware("zephyr:4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_hardware("pegasus:x"), std::invalid_argument);
}

TEST_CASE("masking") {
  const auto hw = make_chimera(1, 1, 4);
  const std::vector<int> dead{0, 5};
  const auto masked = mask_qubits(hw, dead);
  CHECK_FALSE(masked.operable[0]);
  CHECK_FALSE(masked.operable[5]);
  CHECK(masked.graph.degree(0) == 0);
  CHECK(masked.graph.num_edges() == 9);
  CHECK(masked.num_qubits() == hw.num_qubits());
}

TEST_CASE("raster embedding") {
  const auto hw = make_chimera(4, 4, 4);
  const auto loop = make_fm_loop(8, -1.0);
  RasterOptions options;
  options.seed = 12;
  const auto a = raster_embed(loop, hw, options);
  const auto b = raster_embed(loop, hw, options);
  CHECK(a.maps == b.maps);
  REQUIRE(a.size() > 0);
  validate_embeddings(a, &hw);

  std::set<int> used;
  for (const auto& map : a.maps) {
    for (int q : map) CHECK(used.insert(q).second);
  }

  options.max_embeddings = 2;
  CHECK(raster_embed(loop, hw, options).size() == 2);
  options.restarts = 0;
  CHECK_THROWS_AS(raster_embed(loop, hw, options), std::invalid_argument);

  SUBCASE("dead qubits are avoided") {
    std::vector<int> dead;
    for (int q = 0; q < hw.num_qubits(); q += 7) dead.push_back(q);
    const auto masked = mask_qubits(hw, dead);
    RasterOptions opts;
    const auto found = raster_embed(loop, masked, opts);
    validate_embeddings(found, &masked);
    for (const auto& map : found.maps) {
      for (int q : map) CHECK(masked.operable[q]);
    }
  }
  SUBCASE("triangles do not fit bipartite hardware") {
    CHECK(raster_embed(make_frustrated_loop(3, 1.0), hw).size() == 0);
  }
}

TEST_CASE("embedding validation") {
  const auto hw = make_chimera(1, 1, 4);
  const auto pair = IsingModel(2, {0, 0}, {{0, 1, -1.0}});
  EmbeddingSet set{pair, {{0, 4}, {1, 5}}, hw.num_qubits()};
  validate_embeddings(set, &hw);
  set.maps = {{0, 4}, {4, 5}};
  CHECK_THROWS_AS(validate_embeddings(set, &hw), std::invalid_argument);
  set.maps = {{0, 1}};
  CHECK_THROWS_AS(validate_embeddings(set, &hw), std::invalid_argument);
  set.maps = {{0, 0}};
  CHECK_THROWS_AS(validate_embeddings(set), std::invalid_argument);
}

TEST_CASE("programmed energy decomposes over copies") {
  const IsingModel source(3, {0.1, -0.2, 0.3}, {{0, 1, -1.0}, {1, 2, 0.5}, {0, 2, 0.25}});
  EmbeddingSet set{source, {{4, 0, 9}, {2, 7, 1}}, 10};
  const auto programmed = program_embeddings(source, set);
  CHECK(programmed.num_spins() == 10);
  CHECK(programmed.couplings().size() == 6);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Spin> state(10);
    for (auto& s : state) s = rng() & 1 ? 1 : -1;
    double expected = 0.0;
    for (const auto& map : set.maps) {
      std::vector<Spin> local;
      for (int q : map) local.push_back(state[q]);
      expected += energy(source, local);
    }
    CHECK(energy(programmed, state) == doctest::Approx(expected).epsilon(1e-12));
  }

  const auto dense = compact(set);
  CHECK(dense.hardware_qubit == std::vector<int>{4, 0, 9, 2, 7, 1});
  CHECK(dense.embeddings.maps[1] == std::vector<int>{3, 4, 5});
  CHECK(maps_from_json(maps_to_json(set.maps)) == set.maps);
}
