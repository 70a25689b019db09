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

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "isingshim/errors.hpp"
#include "isingshim/ising_model.hpp"
#include "isingshim/model_generators.hpp"
#include "isingshim/model_io.hpp"
#include "oracles.hpp"

using namespace isingshim;

TEST_CASE("energy of small models") {
  IsingModel pair(2, {}, {{0, 1, -1.0}});
  CHECK(energy(pair, SpinState{1, 1}) == -1.0);
  CHECK(energy(pair, SpinState{1, -1}) == 1.0);
  CHECK_THROWS(energy(pair, SpinState{1}));

  IsingModel loop(4, {}, {{0, 1, 1.0}, {1, 2, -1.0}, {2, 3, -1.0}, {0, 3, -1.0}});
  CHECK(energy(loop, SpinState{1, 1, 1, 1}) == -2.0);
}

TEST_CASE("model construction rejects invalid couplings") {
  CHECK_THROWS(IsingModel(2, {}, {{0, 1, 0.0}}));
  CHECK_THROWS(IsingModel(2, {}, {{1, 1, 1.0}}));
  CHECK_THROWS(IsingModel(2, {}, {{0, 2, 1.0}}));
  CHECK_THROWS(IsingModel(2, {}, {{0, 1, 1.0}, {1, 0, 1.0}}));
  IsingModel m(3, {}, {{2, 0, 0.5}});
  CHECK(m.coupling(0, 2) == 0.5);
  CHECK(m.coupling(2, 0) == 0.5);
  CHECK(m.field(1) == 0.0);
}

TEST_CASE("gauge transforms") {
  auto fm3 = make_fm_loop(3, -1.0);
  CHECK(apply_gauge(fm3, {}) == fm3);
  auto g = apply_gauge(fm3, GaugeTransform{{0}});
  CHECK(g.coupling(0, 1) == 1.0);
  CHECK(g.coupling(0, 2) == 1.0);
  CHECK(g.coupling(1, 2) == -1.0);

  // AFM bond on (1,2); flipping spin 2 moves it to (2,3).
  IsingModel loop(5, {}, {{0, 1, -1.0}, {1, 2, 1.0}, {2, 3, -1.0}, {3, 4, -1.0}, {0, 4, -1.0}});
  auto moved = apply_gauge(loop, GaugeTransform{{2}});
  CHECK(moved.coupling(1, 2) == -1.0);
  CHECK(moved.coupling(2, 3) == 1.0);
}

TEST_CASE("gauge invariance of frustration and involution") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6;
    std::vector<double> h(n);
    for (auto& x : h) x = u(rng);
    std::vector<Coupling> cs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (u(rng) > 0.2) cs.push_back({i, j, u(rng)});
      }
    }
    IsingModel model(n, h, cs);
    GaugeTransform gauge;
    for (int i = 0; i < n; ++i) {
      if (u(rng) > 0) gauge.flip_set.push_back(i);
    }
    auto gm = apply_gauge(model, gauge);
    CHECK(apply_gauge(gm, gauge) == model);
    SpinState s(n);
    for (auto& x : s) x = u(rng) > 0 ? 1 : -1;
    auto gs = apply_gauge(s, gauge);
    CHECK(energy(gm, gs) == doctest::Approx(energy(model, s)).epsilon(1e-12));
    for (std::size_t k = 0; k < model.num_couplings(); ++k) {
      const auto& c = model.couplings()[k];
      const auto& gc = gm.couplings()[k];
      CHECK(frustration_indicator(c.value, s[c.i], s[c.j]) ==
            frustration_indicator(gc.value, gs[gc.i], gs[gc.j]));
    }
  }
}

TEST_CASE("zero-field energy is flip symmetric") {
  auto model = make_frustrated_loop(7, -0.3);
  SpinState s{1, -1, 1, 1, -1, -1, 1};
  SpinState flipped = s;
  for (auto& x : flipped) x = static_cast<Spin>(-x);
  CHECK(energy(model, s) == energy(model, flipped));
}

TEST_CASE("signed model") {
  auto loop = make_fm_loop(4, -1.0);
  auto sm = build_signed(loop);
  CHECK(sm.base.num_spins() == 8);
  CHECK(sm.base.num_couplings() == 16);
  for (const auto& c : loop.couplings()) {
    CHECK(sm.base.coupling(sm.plain_of[c.i], sm.plain_of[c.j]) == c.value);
    CHECK(sm.base.coupling(sm.bar_of[c.i], sm.bar_of[c.j]) == c.value);
    CHECK(sm.base.coupling(sm.bar_of[c.i], sm.plain_of[c.j]) == -c.value);
    CHECK(sm.base.coupling(sm.plain_of[c.i], sm.bar_of[c.j]) == -c.value);
  }
  auto g = signed_to_labeled_graph(sm);
  CHECK(g.num_vertices() == 24);
  CHECK(g.edges.size() == 32);

  IsingModel single(1, {0.5}, {});
  auto ss = build_signed(single);
  CHECK(ss.base.num_spins() == 2);
  CHECK(ss.base.field(0) == 0.5);
  CHECK(ss.base.field(1) == -0.5);
  CHECK(ss.base.num_couplings() == 0);

  CHECK(build_signed(make_fm_loop(64, -0.2)).base.num_couplings() == 256);
}

TEST_CASE("signed model restricted to plain spins is the original") {
  IsingModel m(3, {0.25, -0.5, 0.0}, {{0, 1, 0.75}, {1, 2, -1.0}});
  auto sm = build_signed(m);
  for (int i = 0; i < 3; ++i) CHECK(sm.base.field(sm.plain_of[i]) == m.field(i));
  for (const auto& c : m.couplings()) {
    CHECK(sm.base.coupling(sm.plain_of[c.i], sm.plain_of[c.j]) == c.value);
  }
}

TEST_CASE("labeled graph label counts") {
  auto count_labels = [](const LabeledGraph& g) {
    return std::set<int>(g.vertex_labels.begin(), g.vertex_labels.end()).size();
  };
  // Fields zero everywhere, one coupling value per signed copy.
  CHECK(count_labels(signed_to_labeled_graph(build_signed(make_fm_loop(5, -1.0)))) == 3);
  IsingModel uniform(2, {0.0, 0.0}, {{0, 1, 1.0}});
  auto sm = build_signed(uniform);
  // Restrict to the plain half by hand: all-equal fields and couplings.
  IsingModel plain_only(2, {0.0, 0.0}, {{0, 1, 1.0}});
  SignedIsingModel trivial{plain_only, {0, 1}, {0, 1}};
  CHECK(count_labels(signed_to_labeled_graph(trivial)) == 2);
  CHECK(count_labels(signed_to_labeled_graph(sm)) == 3);
  // Labels are dense.
  auto g = signed_to_labeled_graph(sm);
  CHECK(*std::max_element(g.vertex_labels.begin(), g.vertex_labels.end()) == 2);
}

TEST_CASE("loop generators") {
  auto fm = make_fm_loop(64, -0.2);
  CHECK(fm.num_couplings() == 64);
  for (double j : fm.coupling_values()) CHECK(j == -0.2);
  auto fr = make_frustrated_loop(16, -0.9);
  int neg = 0;
  int pos = 0;
  for (double j : fr.coupling_values()) (j < 0 ? neg : pos)++;
  CHECK(neg == 15);
  CHECK(pos == 1);
  CHECK(oracle::ground_state_count(make_frustrated_loop(6, -1.0)) == 12);
  CHECK_THROWS(make_fm_loop(2, -1.0));
}

TEST_CASE("buckyball") {
  auto b = make_buckyball();
  CHECK(b.num_spins() == 60);
  CHECK(b.num_couplings() == 90);
  auto adj = b.adjacency();
  for (const auto& list : adj) CHECK(list.size() == 3);
  for (double j : b.coupling_values()) CHECK(j == 1.0);
  // An edge lies on a pentagon iff it is on a 5-cycle.
  int pentagon_edges = 0;
  for (const auto& c : b.couplings()) {
    bool on_pentagon = false;
    // Search simple paths of length 4 from c.j back to c.i avoiding the edge.
    std::vector<int> path{c.i, c.j};
    auto dfs = [&](auto&& self, int depth) -> void {
      if (on_pentagon) return;
      const int v = path.back();
      for (auto [w, idx] : adj[v]) {
        (void)idx;
        if (depth == 3) {
          if (w == c.i) on_pentagon = true;
          continue;
        }
        if (std::find(path.begin(), path.end(), w) != path.end()) continue;
        path.push_back(w);
        self(self, depth + 1);
        path.pop_back();
      }
    };
    dfs(dfs, 0);
    if (on_pentagon) ++pentagon_edges;
  }
  CHECK(pentagon_edges == 60);
}

TEST_CASE("square cylinder and chain contraction") {
  auto cyl = make_square_cylinder(12, 12, 0.9);
  CHECK(cyl.chain_pairs.size() == 72);
  for (std::size_t k : cyl.chain_couplers()) CHECK(cyl.model.couplings()[k].value == -1.8);
  for (std::size_t k : cyl.afm_couplers()) CHECK(cyl.model.couplings()[k].value == 0.9);
  for (int c = 0; c < 12; ++c) {
    CHECK(cyl.model.coupling(cyl.index(0, c), cyl.index(11, c)) != 0.0);
  }
  auto contracted = contract_chains(cyl.model, cyl.chain_pairs);
  CHECK(contracted.logical.num_spins() == 72);
  for (double j : contracted.logical.coupling_values()) CHECK(j == 0.9);
  auto adj = contracted.logical.adjacency();
  // Interior columns (not 0 or 11) carry degree-6 spins.
  for (int p = 0; p < cyl.model.num_spins(); ++p) {
    const int col = p % 12;
    if (col == 0 || col == 11) continue;
    CHECK(adj[contracted.logical_of[p]].size() == 6);
  }
  CHECK_THROWS(make_square_cylinder(5, 4, 0.9));
  CHECK_THROWS(make_square_cylinder(6, 1, 0.9));

  IsingModel pair(2, {}, {{0, 1, -2.0}});
  std::vector<std::pair<int, int>> chain{{0, 1}};
  auto single = contract_chains(pair, chain);
  CHECK(single.logical.num_spins() == 1);
  CHECK(single.logical.num_couplings() == 0);
  std::vector<std::pair<int, int>> overlapping{{0, 1}, {1, 0}};
  CHECK_THROWS(contract_chains(pair, overlapping));
}

TEST_CASE("model text format") {
  std::istringstream in("# header\n0 0.5\n0 1 -1\n\n2 3 0.25 # tail\n");
  auto m = read_model(in);
  CHECK(m.num_spins() == 4);
  CHECK(m.field(0) == 0.5);
  CHECK(m.coupling(0, 1) == -1.0);
  std::ostringstream out;
  write_model(out, m);
  std::istringstream back(out.str());
  CHECK(read_model(back) == m);

  std::istringstream bad("0 1 1\n0 1 x\n");
  try {
    read_model(bad);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream dup("0 1 1\n1 0 1\n");
  CHECK_THROWS_AS(read_model(dup), ParseError);
}
