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

#ifndef COMMCHAR_GRAPH_HPP_
#define COMMCHAR_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commchar {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Immutable undirected simple graph in CSR form. Node indices are dense in
// [0, node_count()); each node carries a unique external label. Neighbor
// lists are sorted and free of self-loops and duplicates.
class Graph {
 public:
  Graph() = default;

  // Builds a graph over `labels.size()` nodes. Self-loops and duplicate
  // (in either orientation) edges are dropped. Labels must be unique.
  static Graph from_edges(std::vector<std::string> labels, std::span<const Edge> edges);

  // Convenience for tests: nodes labelled "0".."n-1".
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_[v]; }
  std::span<const std::string> labels() const { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;

  // All edges as (u, v) with u < v, in increasing order.
  std::vector<Edge> edges() const;

  // Sum of degrees.
  std::size_t volume() const { return adjacency_.size(); }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

// ---------------------------------------------------------------------------
// Loading

struct LoadOptions {
  // Reject inputs that list both (u, v) and (v, u) instead of symmetrizing.
  bool strict_undirected = false;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t edges_read = 0;
  std::size_t self_loops = 0;
  std::size_t duplicate_edges = 0;  // same pair, same orientation
  std::size_t reversed_pairs = 0;   // (v, u) after (u, v)
};

struct LoadedGraph {
  Graph graph;
  LoadReport report;
  // GML only: scalar node attributes keyed by attribute name, per node.
  std::vector<std::map<std::string, std::string>> node_attributes;
};

// Whitespace-separated edge list. '#' starts a comment line; blank lines are
// ignored. Nodes are indexed in order of first appearance. Labels that only
// occur in self-loops are not added.
LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options = {});

// Minimal GML reader covering `graph [ node [ id .. label .. ] edge [ source
// .. target .. ] ]`, as used by the Newman network data collection. Node
// labels are taken from `label` when present, otherwise from `id`.
LoadedGraph load_gml(std::istream& in, const LoadOptions& options = {});

// Dispatches on the file extension (".gml" versus anything else).
LoadedGraph load_graph_file(const std::filesystem::path& path, const LoadOptions& options = {});

void write_edge_list(std::ostream& out, const Graph& g);

// ---------------------------------------------------------------------------
// Communities

// A named, nonempty set of node indices of some graph. Members are kept
// sorted, so the member order is also the lowest-index-first order used for
// tie-breaking.
class Community {
 public:
  Community() = default;
  Community(std::string id, std::vector<NodeId> members);

  const std::string& id() const { return id_; }
  std::span<const NodeId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(NodeId v) const;

  friend bool operator==(const Community&, const Community&) = default;

 private:
  std::string id_;
  std::vector<NodeId> members_;
};

// Validates that every member indexes `g`.
Community make_community(const Graph& g, std::string id, std::vector<NodeId> members);

// Local view of one community: member <-> local index mapping, internal
// adjacency in local indices, and the external boundary N(C, C̄). Local
// index order equals global index order.
class CommunityIndex {
 public:
  CommunityIndex(const Graph& g, const Community& c);

  const Graph& graph() const { return *graph_; }
  const std::string& id() const { return id_; }
  std::size_t size() const { return members_.size(); }
  std::span<const NodeId> members() const { return members_; }
  NodeId global(std::uint32_t local) const { return members_[local]; }
  std::optional<std::uint32_t> local(NodeId v) const;

  // Internal neighbors of a member, as sorted local indices.
  std::span<const std::uint32_t> internal_neighbors(std::uint32_t local) const {
    return {internal_.data() + internal_offsets_[local],
            internal_.data() + internal_offsets_[local + 1]};
  }
  // External neighbors of a member, as sorted indices into boundary().
  std::span<const std::uint32_t> external_neighbors(std::uint32_t local) const {
    return {external_.data() + external_offsets_[local],
            external_.data() + external_offsets_[local + 1]};
  }

  // N(C, C̄): non-members adjacent to some member, sorted.
  std::span<const NodeId> boundary() const { return boundary_; }
  bool closed() const { return boundary_.empty(); }

  std::size_t internal_edge_count() const { return internal_.size() / 2; }
  std::size_t cut_edge_count() const { return external_.size(); }
  std::size_t volume() const { return 2 * internal_edge_count() + cut_edge_count(); }

 private:
  const Graph* graph_;
  std::string id_;
  std::vector<NodeId> members_;
  std::vector<std::size_t> internal_offsets_;
  std::vector<std::uint32_t> internal_;
  std::vector<std::size_t> external_offsets_;
  std::vector<std::uint32_t> external_;
  std::vector<NodeId> boundary_;
};

// ---------------------------------------------------------------------------
// Queries

// N(S, C): members of C outside S adjacent to S. `subset` must lie in `c`.
std::vector<NodeId> neighbors_in(const Graph& g, std::span<const NodeId> subset, const Community& c);

// N(S, C̄): non-members adjacent to S.
std::vector<NodeId> neighbors_out(const Graph& g, std::span<const NodeId> subset, const Community& c);

// Subgraph on the members with all intra-community edges. Local node i is the
// i-th smallest member; labels are preserved.
Graph induced_subgraph(const Graph& g, const Community& c);

inline constexpr std::int32_t kUnreachable = -1;

// Hop distances from `source`; kUnreachable for nodes in other components.
std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source);

// Number of connected components (isolated nodes count as components).
std::size_t component_count(const Graph& g);

struct TriangleCount {
  std::uint64_t triangles = 0;
  std::uint64_t connected_triples = 0;  // Σ deg·(deg−1)/2
  friend bool operator==(const TriangleCount&, const TriangleCount&) = default;
};

TriangleCount count_triangles(const Graph& g);

}  // namespace commchar

#endif  // COMMCHAR_GRAPH_HPP_
