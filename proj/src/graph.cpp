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

#include "commchar/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "commchar/error.hpp"
#include "commchar/kernels.hpp"

namespace commchar {

Graph Graph::from_edges(std::vector<std::string> labels, std::span<const Edge> edges) {
  Graph g;
  const std::size_t n = labels.size();
  g.labels_ = std::move(labels);
  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.index_.emplace(g.labels_[i], static_cast<NodeId>(i)).second) {
      throw InputError("duplicate node label '" + g.labels_[i] + "'");
    }
  }

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    if (u == v) continue;
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    g.adjacency_[cursor[u]++] = v;
    g.adjacency_[cursor[v]++] = u;
  }

  // Sort and dedupe each list, then compact.
  std::size_t write = 0;
  std::vector<std::size_t> new_offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) g.adjacency_[write++] = *it;
    new_offsets[i + 1] = write;
  }
  g.adjacency_.resize(write);
  g.adjacency_.shrink_to_fit();
  g.offsets_ = std::move(new_offsets);
  return g;
}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  std::vector<std::string> labels(node_count);
  for (std::size_t i = 0; i < node_count; ++i) labels[i] = std::to_string(i);
  return from_edges(std::move(labels), edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nu = neighbors(u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Community::Community(std::string id, std::vector<NodeId> members)
    : id_(std::move(id)), members_(std::move(members)) {
  if (members_.empty()) throw InputError("community '" + id_ + "' is empty");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw InputError("community '" + id_ + "' lists a node more than once");
  }
}

bool Community::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

Community make_community(const Graph& g, std::string id, std::vector<NodeId> members) {
  for (NodeId v : members) {
    if (v >= g.node_count()) {
      throw InputError("community '" + id + "' references node index " + std::to_string(v) +
                       " outside the graph");
    }
  }
  return Community(std::move(id), std::move(members));
}

CommunityIndex::CommunityIndex(const Graph& g, const Community& c)
    : graph_(&g), id_(c.id()), members_(c.members().begin(), c.members().end()) {
  const std::size_t m = members_.size();
  internal_offsets_.assign(m + 1, 0);
  external_offsets_.assign(m + 1, 0);

  std::vector<NodeId> outside;
  for (std::uint32_t i = 0; i < m; ++i) {
    for (NodeId v : g.neighbors(members_[i])) {
      if (auto l = local(v)) {
        internal_.push_back(*l);
      } else {
        outside.push_back(v);
      }
    }
    internal_offsets_[i + 1] = internal_.size();
  }
  boundary_ = outside;
  std::sort(boundary_.begin(), boundary_.end());
  boundary_.erase(std::unique(boundary_.begin(), boundary_.end()), boundary_.end());

  external_.reserve(outside.size());
  for (std::uint32_t i = 0; i < m; ++i) {
    for (NodeId v : g.neighbors(members_[i])) {
      if (local(v)) continue;
      auto it = std::lower_bound(boundary_.begin(), boundary_.end(), v);
      external_.push_back(static_cast<std::uint32_t>(it - boundary_.begin()));
    }
    external_offsets_[i + 1] = external_.size();
  }
}

std::optional<std::uint32_t> CommunityIndex::local(NodeId v) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), v);
  if (it == members_.end() || *it != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - members_.begin());
}

// ---------------------------------------------------------------------------

namespace {

void require_subset(std::span<const NodeId> subset, const Community& c) {
  for (NodeId v : subset) {
    if (!c.contains(v)) {
      throw std::invalid_argument("node " + std::to_string(v) + " is not a member of community '" +
                                  c.id() + "'");
    }
  }
}

std::vector<NodeId> sorted_unique(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<NodeId> neighbors_in(const Graph& g, std::span<const NodeId> subset, const Community& c) {
  require_subset(subset, c);
  const std::vector<NodeId> s = sorted_unique({subset.begin(), subset.end()});
  std::vector<NodeId> out;
  for (NodeId u : s) {
    for (NodeId v : g.neighbors(u)) {
      if (c.contains(v) && !std::binary_search(s.begin(), s.end(), v)) out.push_back(v);
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<NodeId> neighbors_out(const Graph& g, std::span<const NodeId> subset, const Community& c) {
  require_subset(subset, c);
  std::vector<NodeId> out;
  for (NodeId u : subset) {
    for (NodeId v : g.neighbors(u)) {
      if (!c.contains(v)) out.push_back(v);
    }
  }
  return sorted_unique(std::move(out));
}

Graph induced_subgraph(const Graph& g, const Community& c) {
  const CommunityIndex idx(g, c);
  std::vector<std::string> labels;
  labels.reserve(idx.size());
  for (NodeId v : idx.members()) labels.push_back(g.label(v));
  std::vector<Edge> edges;
  edges.reserve(idx.internal_edge_count());
  for (std::uint32_t i = 0; i < idx.size(); ++i) {
    for (std::uint32_t j : idx.internal_neighbors(i)) {
      if (i < j) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(std::move(labels), edges);
}

std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
  if (source >= g.node_count()) throw std::out_of_range("BFS source out of range");
  std::vector<std::int32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> frontier{source};
  std::vector<NodeId> next;
  dist[source] = 0;
  for (std::int32_t depth = 1; !frontier.empty(); ++depth) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId v : g.neighbors(u)) {
        if (dist[v] == kUnreachable) {
          dist[v] = depth;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::size_t component_count(const Graph& g) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> stack;
  std::size_t components = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return components;
}

// Counts each triangle u < v < w once, at its lowest edge (u, v), by
// intersecting the parts of N(u) and N(v) above v.
TriangleCount count_triangles(const Graph& g) {
  TriangleCount tc;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::uint64_t d = g.degree(u);
    tc.connected_triples += d * (d - (d > 0 ? 1 : 0)) / 2;
    const auto nu = g.neighbors(u);
    for (auto it = std::upper_bound(nu.begin(), nu.end(), u); it != nu.end(); ++it) {
      const NodeId v = *it;
      const auto nv = g.neighbors(v);
      const auto u_tail = nu.subspan(static_cast<std::size_t>(it - nu.begin()) + 1);
      const auto v_tail =
          nv.subspan(static_cast<std::size_t>(std::upper_bound(nv.begin(), nv.end(), v) - nv.begin()));
      tc.triangles += kernels::intersect_count(u_tail, v_tail);
    }
  }
  return tc;
}

}  // namespace commchar
