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

#include "isingshim/automorphism.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "isingshim/disjoint_set.hpp"
#include "isingshim/errors.hpp"

namespace isingshim {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t seed, std::uint64_t value) {
  return mix64(seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

int edge_label(const LabeledGraph& g, std::size_t e) {
  return g.edge_labels.empty() ? 0 : g.edge_labels[e];
}

// (neighbour, edge label) lists; validates the graph is simple.
std::vector<std::vector<std::pair<int, int>>> build_adjacency(const LabeledGraph& g) {
  const int n = g.num_vertices();
  if (!g.edge_labels.empty() && g.edge_labels.size() != g.edges.size()) {
    throw std::invalid_argument("edge label count does not match edge count");
  }
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  std::set<std::pair<int, int>> seen;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self loop in labeled graph");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw std::invalid_argument("parallel edge in labeled graph");
    }
    adj[u].emplace_back(v, edge_label(g, e));
    adj[v].emplace_back(u, edge_label(g, e));
  }
  return adj;
}

struct Partition {
  std::vector<std::vector<int>> cells;
  std::vector<int> cell_of;

  bool discrete() const { return cells.size() == cell_of.size(); }

  void reindex() {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
    }
  }

  std::vector<int> sizes() const {
    std::vector<int> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(static_cast<int>(c.size()));
    return out;
  }

  int target_cell() const {
    int best = -1;
    std::size_t best_size = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::size_t s = cells[c].size();
      if (s > 1 && (best < 0 || s < best_size)) {
        best = static_cast<int>(c);
        best_size = s;
      }
    }
    return best;
  }

  Partition individualize(int cell, int vertex) const {
    Partition out = *this;
    auto& members = out.cells[cell];
    members.erase(std::find(members.begin(), members.end(), vertex));
    out.cells.insert(out.cells.begin() + cell, std::vector<int>{vertex});
    out.reindex();
    return out;
  }
};

class Refiner {
 public:
  Refiner(const std::vector<std::vector<std::pair<int, int>>>& adj, std::uint64_t budget)
      : adj_(adj), budget_(budget) {}

  // Refines to a stable colouring and returns a hash of the splitting trace.
  // Both the result and the trace are invariant under relabelling.
  std::uint64_t refine(Partition& p) {
    if (++nodes_ > budget_) {
      throw ResourceLimitExceeded("automorphism search exceeded its budget of " +
                                  std::to_string(budget_) + " nodes");
    }
    std::uint64_t trace = combine(0x5eed, p.cells.size());
    std::vector<std::pair<std::uint64_t, int>> keyed;
    std::vector<std::uint64_t> scratch;
    for (;;) {
      std::vector<std::vector<int>> next;
      next.reserve(p.cells.size());
      bool split = false;
      for (const auto& cell : p.cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        keyed.clear();
        for (int v : cell) {
          scratch.clear();
          for (auto [u, label] : adj_[v]) {
            scratch.push_back((static_cast<std::uint64_t>(p.cell_of[u]) << 32) |
                              static_cast<std::uint32_t>(label));
          }
          std::sort(scratch.begin(), scratch.end());
          std::uint64_t h = combine(0xce11, scratch.size());
          for (auto s : scratch) h = combine(h, s);
          keyed.emplace_back(h, v);
        }
        std::sort(keyed.begin(), keyed.end());
        std::size_t start = 0;
        for (std::size_t k = 1; k <= keyed.size(); ++k) {
          if (k == keyed.size() || keyed[k].first != keyed[start].first) {
            std::vector<int> piece;
            piece.reserve(k - start);
            for (std::size_t m = start; m < k; ++m) piece.push_back(keyed[m].second);
            if (start != 0 || k != keyed.size()) {
              split = true;
              trace = combine(trace, combine(keyed[start].first, piece.size()));
            }
            next.push_back(std::move(piece));
            start = k;
          }
        }
      }
      if (!split) break;
      trace = combine(trace, next.size());
      p.cells = std::move(next);
      p.reindex();
    }
    return trace;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const std::vector<std::vector<std::pair<int, int>>>& adj_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

struct PathNode {
  Partition partition;
  std::uint64_t trace = 0;
  std::vector<int> sizes;
  int target = -1;
  int vertex = -1;
};

class Search {
 public:
  Search(const LabeledGraph& graph, const AutomorphismOptions& options)
      : graph_(graph), adj_(build_adjacency(graph)), refiner_(adj_, options.node_budget) {}

  std::vector<Permutation> run() {
    const int n = graph_.num_vertices();
    if (n == 0) return {};

    Partition root;
    root.cell_of.assign(static_cast<std::size_t>(n), 0);
    std::map<int, std::vector<int>> by_label;
    for (int v = 0; v < n; ++v) by_label[graph_.vertex_labels[v]].push_back(v);
    for (auto& [label, members] : by_label) root.cells.push_back(std::move(members));
    root.reindex();

    PathNode node;
    node.trace = refiner_.refine(root);
    node.partition = std::move(root);
    node.sizes = node.partition.sizes();
    for (;;) {
      node.target = node.partition.target_cell();
      if (node.target < 0) {
        path_.push_back(std::move(node));
        break;
      }
      const auto& cell = node.partition.cells[node.target];
      node.vertex = *std::min_element(cell.begin(), cell.end());
      PathNode child;
      child.partition = node.partition.individualize(node.target, node.vertex);
      child.trace = refiner_.refine(child.partition);
      child.sizes = child.partition.sizes();
      path_.push_back(std::move(node));
      node = std::move(child);
    }

    DisjointSet orbits(static_cast<std::size_t>(n));
    std::vector<Permutation> generators;
    for (int depth = static_cast<int>(path_.size()) - 2; depth >= 0; --depth) {
      const PathNode& level = path_[depth];
      std::vector<int> candidates = level.partition.cells[level.target];
      std::sort(candidates.begin(), candidates.end());
      std::vector<int> failed;
      for (int w : candidates) {
        if (orbits.same(w, level.vertex)) continue;
        bool known_bad = false;
        for (int f : failed) known_bad |= orbits.same(w, f);
        if (known_bad) continue;

        Partition child = level.partition.individualize(level.target, w);
        auto found = matches(child, depth + 1) ? find_leaf(std::move(child), depth + 1)
                                               : std::nullopt;
        if (!found) {
          failed.push_back(w);
          continue;
        }
        for (int v = 0; v < n; ++v) orbits.unite(v, (*found)[v]);
        generators.push_back(std::move(*found));
      }
    }
    return generators;
  }

 private:
  // Refines `p` in place and compares it to the first-path node at `depth`.
  bool matches(Partition& p, std::size_t depth) {
    const std::uint64_t trace = refiner_.refine(p);
    const PathNode& ref = path_[depth];
    return trace == ref.trace && p.cells.size() == ref.partition.cells.size() &&
           p.sizes() == ref.sizes;
  }

  std::optional<Permutation> find_leaf(Partition p, std::size_t depth) {
    const PathNode& ref = path_[depth];
    if (p.discrete()) {
      Permutation perm(p.cell_of.size());
      for (std::size_t c = 0; c < p.cells.size(); ++c) perm[ref.partition.cells[c][0]] = p.cells[c][0];
      if (is_automorphism(graph_, perm)) return perm;
      return std::nullopt;
    }
    const std::vector<int> cell = p.cells[ref.target];
    for (int x : cell) {
      Partition child = p.individualize(ref.target, x);
      if (!matches(child, depth + 1)) continue;
      if (auto found = find_leaf(std::move(child), depth + 1)) return found;
    }
    return std::nullopt;
  }

  const LabeledGraph& graph_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  Refiner refiner_;
  std::vector<PathNode> path_;
};

std::map<std::pair<int, int>, int> edge_index(const LabeledGraph& g) {
  std::map<std::pair<int, int>, int> index;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    index.emplace(std::make_pair(std::min(u, v), std::max(u, v)), static_cast<int>(e));
  }
  return index;
}

}  // namespace

bool is_automorphism(const LabeledGraph& graph, const Permutation& perm) {
  const int n = graph.num_vertices();
  if (perm.size() != static_cast<std::size_t>(n)) return false;
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v) {
    const int w = perm[v];
    if (w < 0 || w >= n || hit[w]) return false;
    hit[w] = true;
    if (graph.vertex_labels[v] != graph.vertex_labels[w]) return false;
  }
  const auto index = edge_index(graph);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const int a = perm[graph.edges[e].first];
    const int b = perm[graph.edges[e].second];
    auto it = index.find({std::min(a, b), std::max(a, b)});
    if (it == index.end()) return false;
    if (edge_label(graph, static_cast<std::size_t>(it->second)) != edge_label(graph, e)) return false;
  }
  return true;
}

std::vector<Permutation> automorphism_generators(const LabeledGraph& graph,
                                                 const AutomorphismOptions& options) {
  if (graph.vertex_labels.empty()) return {};
  Search search(graph, options);
  return search.run();
}

OrbitPartition vertex_and_edge_orbits(const LabeledGraph& graph,
                                      std::span<const Permutation> generators) {
  const auto index = edge_index(graph);
  DisjointSet vertices(static_cast<std::size_t>(graph.num_vertices()));
  DisjointSet edges(graph.edges.size());
  for (const auto& perm : generators) {
    if (!is_automorphism(graph, perm)) {
      throw std::invalid_argument("generator is not an automorphism of the graph");
    }
    for (int v = 0; v < graph.num_vertices(); ++v) vertices.unite(v, perm[v]);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const int a = perm[graph.edges[e].first];
      const int b = perm[graph.edges[e].second];
      edges.unite(e, index.at({std::min(a, b), std::max(a, b)}));
    }
  }
  return {vertices.min_labels(), edges.min_labels()};
}

}  // namespace isingshim
