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

#ifndef COMMCHAR_METRICS_HPP_
#define COMMCHAR_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "commchar/graph.hpp"

namespace commchar {

// Distance statistics of a community's induced subgraph, over reachable
// unordered pairs only.
struct PathStats {
  double apl = 0.0;
  std::uint32_t diameter = 0;
  std::size_t component_count = 0;
  std::uint64_t reachable_pairs = 0;
};

PathStats community_paths(const Graph& g, const Community& c);

struct AplResult {
  double apl;
  std::size_t component_count;
};
AplResult community_apl(const Graph& g, const Community& c);
std::uint32_t community_diameter(const Graph& g, const Community& c);

// Global transitivity 3·triangles / connected triples; 0 without triples.
double clustering_coefficient(const Graph& g);

struct CommunityStats {
  std::string id;
  std::size_t size = 0;
  double apl = 0.0;
  std::uint32_t diameter = 0;
  double ccc = 0.0;
  std::uint64_t triangles = 0;
  std::uint64_t connected_triples = 0;
  std::size_t component_count = 0;
  std::size_t boundary_size = 0;
};

CommunityStats community_stats(const Graph& g, const Community& c);

struct GroupSummary {
  std::size_t count = 0;
  double mean_triangles = 0.0;  // 0 when empty
  bool empty = true;
};

struct TriangleSplit {
  double threshold;
  GroupSummary above;     // ccc > threshold
  GroupSummary at_most;   // ccc <= threshold
};

TriangleSplit triangle_split_analysis(std::span<const CommunityStats> stats, double threshold);

// Everything the network summary row averages, for one community.
struct CommunityProfile {
  CommunityStats stats;
  double idr_k = 0.0;                   // IDR of the k-IDS
  std::optional<double> edr_k;          // EDR of the k-EDS; absent if closed
  std::size_t ids_p_size = 0;           // |p-IDS|
  std::optional<std::size_t> eds_p_size;
  double islope = 0.0;
  std::optional<double> eslope;
};

// Unweighted means across communities. External columns average over the
// communities that have a boundary; NaN when none do.
struct NetworkSummary {
  std::size_t communities = 0;
  std::size_t closed_communities = 0;
  double idr = 0.0;
  double edr = 0.0;
  double idn = 0.0;
  double edn = 0.0;
  double islope = 0.0;
  double eslope = 0.0;
  double apl = 0.0;
  double diameter = 0.0;
  double ccc = 0.0;
  double ncc = 0.0;
};

NetworkSummary aggregate_stats(std::span<const CommunityProfile> profiles, double ncc);

// Mean of `values` summed in sorted order, so the result does not depend on
// the input order. NaN for an empty input.
double order_free_mean(std::vector<double> values);

}  // namespace commchar

#endif  // COMMCHAR_METRICS_HPP_
