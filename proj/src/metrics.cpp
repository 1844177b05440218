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

#include "commchar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "commchar/error.hpp"

namespace commchar {

PathStats community_paths(const Graph& g, const Community& c) {
  const Graph sub = induced_subgraph(g, c);
  PathStats ps;
  ps.component_count = component_count(sub);
  std::uint64_t total = 0;
  std::uint64_t ordered_pairs = 0;
  for (NodeId s = 0; s < sub.node_count(); ++s) {
    for (std::int32_t d : bfs_distances(sub, s)) {
      if (d <= 0) continue;
      total += static_cast<std::uint64_t>(d);
      ++ordered_pairs;
      ps.diameter = std::max(ps.diameter, static_cast<std::uint32_t>(d));
    }
  }
  ps.reachable_pairs = ordered_pairs / 2;
  ps.apl = ordered_pairs == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(ordered_pairs);
  return ps;
}

AplResult community_apl(const Graph& g, const Community& c) {
  const PathStats ps = community_paths(g, c);
  return {ps.apl, ps.component_count};
}

std::uint32_t community_diameter(const Graph& g, const Community& c) {
  return community_paths(g, c).diameter;
}

double clustering_coefficient(const Graph& g) {
  const TriangleCount tc = count_triangles(g);
  if (tc.connected_triples == 0) return 0.0;
  return 3.0 * static_cast<double>(tc.triangles) / static_cast<double>(tc.connected_triples);
}

CommunityStats community_stats(const Graph& g, const Community& c) {
  const PathStats ps = community_paths(g, c);
  const TriangleCount tc = count_triangles(induced_subgraph(g, c));
  CommunityStats st;
  st.id = c.id();
  st.size = c.size();
  st.apl = ps.apl;
  st.diameter = ps.diameter;
  st.component_count = ps.component_count;
  st.triangles = tc.triangles;
  st.connected_triples = tc.connected_triples;
  st.ccc = tc.connected_triples == 0
               ? 0.0
               : 3.0 * static_cast<double>(tc.triangles) / static_cast<double>(tc.connected_triples);
  st.boundary_size = CommunityIndex(g, c).boundary().size();
  return st;
}

double order_free_mean(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

TriangleSplit triangle_split_analysis(std::span<const CommunityStats> stats, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw ConfigError("threshold must lie in [0, 1]");
  std::vector<double> above, at_most;
  for (const auto& st : stats) {
    (st.ccc > threshold ? above : at_most).push_back(static_cast<double>(st.triangles));
  }
  auto summarize = [](std::vector<double> v) {
    GroupSummary gs;
    gs.count = v.size();
    gs.empty = v.empty();
    gs.mean_triangles = v.empty() ? 0.0 : order_free_mean(std::move(v));
    return gs;
  };
  return {threshold, summarize(std::move(above)), summarize(std::move(at_most))};
}

NetworkSummary aggregate_stats(std::span<const CommunityProfile> profiles, double ncc) {
  if (profiles.empty()) throw InputError("cannot aggregate an empty community list");
  std::vector<double> idr, edr, idn, edn, islope, eslope, apl, diameter, ccc;
  NetworkSummary s;
  s.communities = profiles.size();
  for (const auto& p : profiles) {
    idr.push_back(p.idr_k);
    idn.push_back(static_cast<double>(p.ids_p_size));
    islope.push_back(p.islope);
    apl.push_back(p.stats.apl);
    diameter.push_back(static_cast<double>(p.stats.diameter));
    ccc.push_back(p.stats.ccc);
    if (p.edr_k) {
      edr.push_back(*p.edr_k);
      edn.push_back(static_cast<double>(p.eds_p_size.value_or(0)));
      eslope.push_back(p.eslope.value_or(0.0));
    } else {
      ++s.closed_communities;
    }
  }
  s.idr = order_free_mean(std::move(idr));
  s.edr = order_free_mean(std::move(edr));
  s.idn = order_free_mean(std::move(idn));
  s.edn = order_free_mean(std::move(edn));
  s.islope = order_free_mean(std::move(islope));
  s.eslope = order_free_mean(std::move(eslope));
  s.apl = order_free_mean(std::move(apl));
  s.diameter = order_free_mean(std::move(diameter));
  s.ccc = order_free_mean(std::move(ccc));
  s.ncc = ncc;
  return s;
}

}  // namespace commchar
