// Copyright 2026 The commchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared graph fixtures and brute-force oracles for the test suites. Nothing
// here calls into the greedy, enumeration or sampling code under test.

#ifndef COMMCHAR_TESTS_FIXTURES_HPP_
#define COMMCHAR_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commchar/graph.hpp"
#include "commchar/rng.hpp"

namespace fixtures {

using commchar::Community;
using commchar::Edge;
using commchar::Graph;
using commchar::NodeId;

inline std::vector<NodeId> range(NodeId first, NodeId last) {
  std::vector<NodeId> v(last - first);
  std::iota(v.begin(), v.end(), first);
  return v;
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

inline std::vector<Edge> clique_edges(NodeId first, NodeId n) {
  std::vector<Edge> e;
  for (NodeId i = first; i < first + n; ++i)
    for (NodeId j = i + 1; j < first + n; ++j) e.emplace_back(i, j);
  return e;
}

inline Graph clique(std::size_t n) { return Graph::from_edges(n, clique_edges(0, static_cast<NodeId>(n))); }

// Node 0 is the hub.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, e);
}

// K5 on 0..4 and K5 on 5..9, bridged by 4-5.
inline Graph two_k5_bridge() {
  auto e = clique_edges(0, 5);
  auto f = clique_edges(5, 5);
  e.insert(e.end(), f.begin(), f.end());
  e.emplace_back(4, 5);
  return Graph::from_edges(10, e);
}

// A reconstruction of the IDR/EDR illustration: community {v0..v5}, outside
// {v6, v7, v8}. With S = {v3, v4}: N(S,C) = {v0, v2, v5}, N(S,C̄) = {v6, v8},
// N(C,C̄) = {v6, v7, v8}.
inline Graph fig1() {
  std::vector<std::string> labels;
  for (int i = 0; i < 9; ++i) labels.push_back("v" + std::to_string(i));
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 3}, {2, 3}, {2, 4}, {4, 5},
                            {3, 6}, {4, 8}, {1, 7}, {6, 7}, {7, 8}};
  return Graph::from_edges(labels, e);
}
inline Community fig1_community() { return Community("red", range(0, 6)); }

// Erdős–Rényi G(n, p) from a fixed seed.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  commchar::Rng rng(seed);
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (commchar::uniform_unit(rng) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

// Calls fn(subset) for every size-k subset of [0, m).
inline void for_each_subset(std::size_t m, std::size_t k,
                            const std::function<void(const std::vector<NodeId>&)>& fn) {
  std::vector<NodeId> pick;
  std::function<void(NodeId)> rec = [&](NodeId start) {
    if (pick.size() == k) {
      fn(pick);
      return;
    }
    for (NodeId v = start; v < m; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

// |S ∪ N(S)| within the community, from raw adjacency (members given as
// global ids in `subset`).
inline std::size_t internal_cover(const Graph& g, const Community& c, const std::vector<NodeId>& subset) {
  std::set<NodeId> cov;
  for (NodeId u : subset) {
    cov.insert(u);
    for (NodeId v : g.neighbors(u))
      if (c.contains(v)) cov.insert(v);
  }
  return cov.size();
}

inline std::size_t external_cover(const Graph& g, const Community& c, const std::vector<NodeId>& subset) {
  std::set<NodeId> cov;
  for (NodeId u : subset)
    for (NodeId v : g.neighbors(u))
      if (!c.contains(v)) cov.insert(v);
  return cov.size();
}

// Best coverage over all size-k subsets of the members.
inline std::size_t optimal_cover(const Graph& g, const Community& c, std::size_t k, bool internal) {
  std::size_t best = 0;
  const auto members = c.members();
  for_each_subset(members.size(), std::min(k, members.size()), [&](const std::vector<NodeId>& local) {
    std::vector<NodeId> s;
    for (NodeId i : local) s.push_back(members[i]);
    best = std::max(best, internal ? internal_cover(g, c, s) : external_cover(g, c, s));
  });
  return best;
}

inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// Closed form of the mean ratio over all size-k subsets: an element is
// missed only if none of the `d` members covering it is chosen, which
// happens with probability C(m-d, k) / C(m, k).
inline double expected_ratio_closed_form(const Graph& g, const Community& c, std::size_t k, bool internal) {
  const double m = static_cast<double>(c.size());
  std::vector<std::size_t> coverers;  // per universe element
  if (internal) {
    for (NodeId u : c.members()) {
      std::size_t d = 1;
      for (NodeId v : g.neighbors(u)) d += c.contains(v) ? 1 : 0;
      coverers.push_back(d);
    }
  } else {
    std::map<NodeId, std::size_t> ext;
    for (NodeId u : c.members())
      for (NodeId v : g.neighbors(u))
        if (!c.contains(v)) ++ext[v];
    for (const auto& [v, d] : ext) coverers.push_back(d);
  }
  double covered = 0.0;
  for (std::size_t d : coverers) {
    const double miss = (m - static_cast<double>(d) < static_cast<double>(k))
                            ? 0.0
                            : std::exp(log_binomial(m - static_cast<double>(d), static_cast<double>(k)) -
                                       log_binomial(m, static_cast<double>(k)));
    covered += 1.0 - miss;
  }
  return covered / static_cast<double>(coverers.size());
}

struct AtlasGraph {
  int index;
  Graph graph;
};

// Reads tests/data/graph_atlas7.txt.
inline std::vector<AtlasGraph> load_atlas(const std::string& path) {
  std::ifstream in(path);
  std::vector<AtlasGraph> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    int idx;
    std::size_t n, m;
    ss >> idx >> n >> m;
    std::vector<Edge> e(m);
    for (auto& [u, v] : e) ss >> u >> v;
    if (n == 0) continue;
    out.push_back({idx, Graph::from_edges(n, e)});
  }
  return out;
}

}  // namespace fixtures

#endif  // COMMCHAR_TESTS_FIXTURES_HPP_
