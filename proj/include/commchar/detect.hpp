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

#ifndef COMMCHAR_DETECT_HPP_
#define COMMCHAR_DETECT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "commchar/graph.hpp"

namespace commchar {

enum class SeedStrategy { kAllNodes, kRandomSample, kProvided };

struct DetectParams {
  double alpha = 0.15;    // teleport probability
  double epsilon = 1e-4;  // push tolerance on r(v)/deg(v)
  SeedStrategy seeds = SeedStrategy::kAllNodes;
  std::size_t sample_size = 0;        // kRandomSample
  std::vector<NodeId> provided_seeds;  // kProvided
  std::size_t min_size = 5;
  std::size_t max_size = 200;
  double overlap_jaccard_max = 0.5;
  std::uint64_t rng_seed = 0;
  std::size_t workers = 1;

  void validate() const;
};

struct PprVector {
  std::vector<std::pair<NodeId, double>> scores;  // sorted by node, all > 0
  double max_residual_ratio = 0.0;                // max_v r(v)/deg(v) at exit
  std::size_t pushes = 0;
};

// Approximate personalized PageRank of the lazy random walk by residual
// pushes (Andersen-Chung-Lang). On return every residual satisfies
// r(v) < epsilon·deg(v). An isolated seed keeps all mass.
PprVector approximate_ppr(const Graph& g, NodeId seed, double alpha, double epsilon);

struct SweepCut {
  Community community;
  double conductance;
  bool connected;
};

// Sweeps the nodes of `scores` by score/degree (descending, ties to the
// lower index) and returns the prefix of minimum conductance
// cut(S) / min(vol(S), vol(V∖S)). Only prefixes with 0 < vol(S) <= vol(V)/2
// are candidates, so a cluster is never reported as its own complement.
// nullopt when there is no local community: no candidate prefix exists, or
// the scores cover the whole graph with one tied normalized value so the
// order carries no signal.
// Throws ConfigError when no score is positive.
std::optional<SweepCut> sweep_cut(const Graph& g, std::span<const std::pair<NodeId, double>> scores);

// Conductance recomputed directly from the graph. 1 when either side has
// zero volume.
double conductance(const Graph& g, const Community& c);

// True when the community's induced subgraph is connected.
bool is_connected(const Graph& g, const Community& c);

struct DetectedCommunity {
  Community community;
  double conductance;
  bool connected;
  NodeId seed;
};

// PPR + sweep from each seed, size filter, then greedy de-duplication in
// order of increasing conductance: a candidate is dropped when its Jaccard
// similarity with an already kept community exceeds overlap_jaccard_max.
// Returned communities are ordered by (conductance, members) and named
// "c0", "c1", ...; the output does not depend on `workers`.
std::vector<DetectedCommunity> detect_communities(const Graph& g, const DetectParams& params);

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b);

// ---------------------------------------------------------------------------
// Community files: one community per line, whitespace-separated node
// labels, optionally preceded by an "id:" token. Blank and '#' lines are
// skipped. Communities without an id are named by their 0-based line order.

std::vector<Community> load_communities(std::istream& in, const Graph& g);
std::vector<Community> load_communities_file(const std::string& path, const Graph& g);

void write_communities(std::ostream& out, const Graph& g, std::span<const Community> communities);

// Groups nodes by the value of a GML node attribute (e.g. "value" for the
// football conferences). Groups are ordered by attribute value.
std::vector<Community> communities_from_attribute(const LoadedGraph& loaded, const std::string& attribute);

}  // namespace commchar

#endif  // COMMCHAR_DETECT_HPP_
