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

#include "isingshim/subgraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

namespace isingshim {

namespace {

constexpr std::uint8_t kFar = std::numeric_limits<std::uint8_t>::max();

// BFS distances from `source`, capped at kFar.
std::vector<std::uint8_t> distances_from(const Graph& g, int source, int cap) {
  std::vector<std::uint8_t> dist(static_cast<std::size_t>(g.num_vertices()), kFar);
  cap = std::min(cap, kFar - 1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (dist[v] >= cap) continue;
    for (int w : g.neighbors(v)) {
      if (dist[w] == kFar) {
        dist[w] = static_cast<std::uint8_t>(dist[v] + 1);
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// Pattern vertices ordered so that each one (after the first of its
// component) has an earlier neighbour; ties prefer many earlier neighbours,
// then high degree, then low index.
std::vector<int> search_order(const Graph& pattern) {
  const int n = pattern.num_vertices();
  std::vector<int> order;
  std::vector<int> placed_neighbours(n, 0);
  std::vector<bool> placed(n, false);
  while (static_cast<int>(order.size()) < n) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best < 0 || placed_neighbours[v] > placed_neighbours[best] ||
          (placed_neighbours[v] == placed_neighbours[best] &&
           pattern.degree(v) > pattern.degree(best))) {
        best = v;
      }
    }
    placed[best] = true;
    order.push_back(best);
    for (int w : pattern.neighbors(best)) ++placed_neighbours[w];
  }
  return order;
}

class Matcher {
 public:
  Matcher(const Graph& pattern, const Graph& target, const SubgraphOptions& options)
      : pattern_(pattern), target_(target), options_(options), order_(search_order(pattern)) {
    const int n = pattern.num_vertices();
    pattern_dist_.resize(n);
    for (int v = 0; v < n; ++v) {
      pattern_dist_[v] = distances_from(pattern, v, n);
      for (auto d : pattern_dist_[v]) {
        if (d != kFar) max_distance_ = std::max<int>(max_distance_, d);
      }
    }
    position_.assign(n, -1);
    for (int k = 0; k < n; ++k) position_[order_[k]] = k;
    target_dist_.resize(static_cast<std::size_t>(target.num_vertices()));
    image_.assign(n, -1);
    used_.assign(static_cast<std::size_t>(target.num_vertices()), false);

    roots_.resize(static_cast<std::size_t>(target.num_vertices()));
    for (int t = 0; t < target.num_vertices(); ++t) roots_[t] = t;
    if (options.seed != 0) std::shuffle(roots_.begin(), roots_.end(), rng_);
  }

  SubgraphResult run() {
    if (pattern_.num_vertices() == 0) throw std::invalid_argument("empty pattern");
    if (pattern_.num_vertices() <= target_.num_vertices()) extend(0);
    return std::move(result_);
  }

 private:
  const std::vector<std::uint8_t>& target_distances(int t) {
    auto& row = target_dist_[t];
    if (row.empty()) row = distances_from(target_, t, max_distance_);
    return row;
  }

  bool feasible(int p, int t) {
    if (!adjacent_feasible(p, t)) return false;
    const auto& pd = pattern_dist_[p];
    const auto& td = target_distances(t);
    for (int k = 0; k < position_[p]; ++k) {
      const int q = order_[k];
      if (pd[q] != kFar && td[image_[q]] > pd[q]) return false;
    }
    return true;
  }

  // Forward check: every unmapped neighbour of p keeps a candidate.
  bool neighbours_placeable(int p) {
    for (int q : pattern_.neighbors(p)) {
      if (image_[q] >= 0) continue;
      bool any = false;
      for (int t : target_.neighbors(image_[p])) {
        if (adjacent_feasible(q, t)) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  bool adjacent_feasible(int p, int t) const {
    if (used_[t] || target_.degree(t) < pattern_.degree(p)) return false;
    for (int q : pattern_.neighbors(p)) {
      if (image_[q] >= 0 && !target_.has_edge(t, image_[q])) return false;
    }
    return true;
  }

  // Returns false once the search must stop.
  bool extend(std::size_t depth) {
    if (depth == order_.size()) {
      if (is_subgraph_map(pattern_, target_, image_)) result_.maps.push_back(image_);
      return result_.maps.size() < options_.limit;
    }
    const int p = order_[depth];
    int anchor = -1;
    for (int q : pattern_.neighbors(p)) {
      if (image_[q] >= 0) {
        anchor = q;
        break;
      }
    }
    std::vector<int> candidates = anchor >= 0 ? target_.neighbors(image_[anchor]) : roots_;
    if (options_.seed != 0 && anchor >= 0) std::shuffle(candidates.begin(), candidates.end(), rng_);
    for (int t : candidates) {
      if (!feasible(p, t)) continue;
      if (++result_.nodes > options_.node_budget) {
        result_.truncated = true;
        return false;
      }
      image_[p] = t;
      used_[t] = true;
      const bool more = !neighbours_placeable(p) || extend(depth + 1);
      used_[t] = false;
      image_[p] = -1;
      if (!more) return false;
    }
    return true;
  }

  const Graph& pattern_;
  const Graph& target_;
  const SubgraphOptions& options_;
  std::vector<int> order_;
  std::vector<int> position_;
  std::vector<std::vector<std::uint8_t>> pattern_dist_;
  std::vector<std::vector<std::uint8_t>> target_dist_;
  int max_distance_ = 0;
  std::vector<int> roots_;
  std::mt19937_64 rng_{options_.seed};
  std::vector<int> image_;
  std::vector<bool> used_;
  SubgraphResult result_;
};

}  // namespace

bool is_subgraph_map(const Graph& pattern, const Graph& target, std::span<const int> map) {
  if (static_cast<int>(map.size()) != pattern.num_vertices()) return false;
  std::vector<int> sorted(map.begin(), map.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (int t : sorted) {
    if (t < 0 || t >= target.num_vertices()) return false;
  }
  for (auto [u, v] : pattern.edges()) {
    if (!target.has_edge(map[u], map[v])) return false;
  }
  return true;
}

SubgraphResult find_subgraph(const Graph& pattern, const Graph& target,
                             const SubgraphOptions& options) {
  if (options.limit == 0) return {};
  return Matcher(pattern, target, options).run();
}

}  // namespace isingshim
