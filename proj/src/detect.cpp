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

#include "commchar/detect.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "commchar/error.hpp"
#include "commchar/kernels.hpp"
#include "commchar/parallel.hpp"
#include "commchar/rng.hpp"

namespace commchar {

void DetectParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (min_size < 1) throw ConfigError("min-size must be at least 1");
  if (min_size > max_size) throw ConfigError("min-size must not exceed max-size");
  if (!(overlap_jaccard_max >= 0.0 && overlap_jaccard_max <= 1.0)) {
    throw ConfigError("overlap Jaccard threshold must lie in [0, 1]");
  }
  if (seeds == SeedStrategy::kRandomSample && sample_size == 0) {
    throw ConfigError("random seed sampling needs a positive sample size");
  }
  if (seeds == SeedStrategy::kProvided && provided_seeds.empty()) {
    throw ConfigError("provided seed strategy needs at least one seed");
  }
}

namespace {

// Dense scratch arrays reused across seeds by one worker.
class PprWorkspace {
 public:
  explicit PprWorkspace(std::size_t n) : p_(n, 0.0), r_(n, 0.0), queued_(n, 0), seen_(n, 0) {}

  PprVector run(const Graph& g, NodeId seed, double alpha, double epsilon) {
    PprVector out;
    if (g.degree(seed) == 0) {
      out.scores.emplace_back(seed, 1.0);
      return out;
    }
    touch(seed);
    r_[seed] = 1.0;
    queue_.assign(1, seed);
    queued_[seed] = 1;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const NodeId u = queue_[head];
      queued_[u] = 0;
      const double d = static_cast<double>(g.degree(u));
      if (r_[u] < epsilon * d) continue;
      const double ru = r_[u];
      p_[u] += alpha * ru;
      r_[u] = (1.0 - alpha) * ru / 2.0;
      const double share = (1.0 - alpha) * ru / (2.0 * d);
      ++out.pushes;
      for (NodeId v : g.neighbors(u)) {
        touch(v);
        r_[v] += share;
        if (!queued_[v] && r_[v] >= epsilon * static_cast<double>(g.degree(v))) {
          queued_[v] = 1;
          queue_.push_back(v);
        }
      }
      if (!queued_[u] && r_[u] >= epsilon * d) {
        queued_[u] = 1;
        queue_.push_back(u);
      }
    }
    std::sort(touched_.begin(), touched_.end());
    for (NodeId v : touched_) {
      if (p_[v] > 0.0) out.scores.emplace_back(v, p_[v]);
      out.max_residual_ratio =
          std::max(out.max_residual_ratio, r_[v] / static_cast<double>(g.degree(v)));
      p_[v] = 0.0;
      r_[v] = 0.0;
      queued_[v] = 0;
      seen_[v] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  void touch(NodeId v) {
    if (!seen_[v]) {
      seen_[v] = 1;
      touched_.push_back(v);
    }
  }

  std::vector<double> p_, r_;
  std::vector<char> queued_, seen_;
  std::vector<NodeId> queue_;
  std::vector<NodeId> touched_;
};

}  // namespace

PprVector approximate_ppr(const Graph& g, NodeId seed, double alpha, double epsilon) {
  if (seed >= g.node_count()) throw std::out_of_range("PPR seed out of range");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  PprWorkspace ws(g.node_count());
  return ws.run(g, seed, alpha, epsilon);
}

std::optional<SweepCut> sweep_cut(const Graph& g, std::span<const std::pair<NodeId, double>> scores) {
  struct Entry {
    NodeId node;
    double key;
  };
  std::vector<Entry> order;
  order.reserve(scores.size());
  for (const auto& [v, s] : scores) {
    if (v >= g.node_count()) throw std::out_of_range("sweep node out of range");
    if (s > 0.0) {
      const double d = static_cast<double>(g.degree(v));
      order.push_back({v, d == 0.0 ? std::numeric_limits<double>::infinity() : s / d});
    }
  }
  if (order.empty()) throw ConfigError("sweep cut needs at least one positive score");
  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    return a.key != b.key ? a.key > b.key : a.node < b.node;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [](const Entry& a, const Entry& b) { return a.node == b.node; }),
              order.end());

  const bool all_tied = std::all_of(order.begin(), order.end(),
                                    [&](const Entry& e) { return e.key == order.front().key; });
  if (order.size() == g.node_count() && order.size() > 1 && all_tied) return std::nullopt;

  const double total_volume = static_cast<double>(g.volume());
  std::unordered_set<NodeId> in_set;
  in_set.reserve(order.size() * 2);
  double volume = 0.0, cut = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_len = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId u = order[i].node;
    std::size_t inside = 0;
    for (NodeId v : g.neighbors(u)) inside += in_set.count(v);
    in_set.insert(u);
    volume += static_cast<double>(g.degree(u));
    // Past half the volume every prefix mirrors a smaller complement.
    if (2.0 * volume > total_volume) break;
    cut += static_cast<double>(g.degree(u)) - 2.0 * static_cast<double>(inside);
    const double denom = std::min(volume, total_volume - volume);
    if (denom <= 0.0) continue;
    const double phi = cut / denom;
    if (phi < best) {
      best = phi;
      best_len = i + 1;
    }
  }
  if (best_len == 0 || best_len == g.node_count()) return std::nullopt;

  std::vector<NodeId> members;
  members.reserve(best_len);
  for (std::size_t i = 0; i < best_len; ++i) members.push_back(order[i].node);
  Community c("sweep", std::move(members));
  const bool connected = is_connected(g, c);
  return SweepCut{std::move(c), best, connected};
}

double conductance(const Graph& g, const Community& c) {
  const CommunityIndex idx(g, c);
  const double vol = static_cast<double>(idx.volume());
  const double denom = std::min(vol, static_cast<double>(g.volume()) - vol);
  if (denom <= 0.0) return 1.0;
  return static_cast<double>(idx.cut_edge_count()) / denom;
}

bool is_connected(const Graph& g, const Community& c) {
  return component_count(induced_subgraph(g, c)) == 1;
}

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  if (a.empty() && b.empty()) return 1.0;
  const auto inter = static_cast<double>(kernels::intersect_count(a, b));
  return inter / (static_cast<double>(a.size() + b.size()) - inter);
}

std::vector<DetectedCommunity> detect_communities(const Graph& g, const DetectParams& params) {
  params.validate();
  const std::size_t n = g.node_count();
  std::vector<NodeId> seeds;
  switch (params.seeds) {
    case SeedStrategy::kAllNodes:
      seeds.resize(n);
      std::iota(seeds.begin(), seeds.end(), NodeId{0});
      break;
    case SeedStrategy::kRandomSample: {
      std::vector<NodeId> perm(n);
      std::iota(perm.begin(), perm.end(), NodeId{0});
      Rng rng(params.rng_seed);
      const std::size_t take = std::min(params.sample_size, n);
      for (std::size_t j = 0; j < take; ++j) {
        std::swap(perm[j], perm[j + uniform_below(rng, n - j)]);
      }
      seeds.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(take));
      break;
    }
    case SeedStrategy::kProvided:
      for (NodeId s : params.provided_seeds) {
        if (s >= n) throw ConfigError("seed node index " + std::to_string(s) + " outside the graph");
      }
      seeds = params.provided_seeds;
      break;
  }

  std::vector<std::optional<DetectedCommunity>> slots(seeds.size());
  const std::size_t workers = std::max<std::size_t>(1, params.workers);
  const std::size_t chunks = std::min(workers, seeds.size());
  // One workspace per chunk; chunk j handles seeds j, j + chunks, ...
  parallel_for(chunks, workers, [&](std::size_t chunk) {
    PprWorkspace ws(n);
    for (std::size_t i = chunk; i < seeds.size(); i += chunks) {
      if (g.degree(seeds[i]) == 0) continue;
      const PprVector ppr = ws.run(g, seeds[i], params.alpha, params.epsilon);
      auto cut = sweep_cut(g, ppr.scores);
      if (!cut) continue;
      const std::size_t size = cut->community.size();
      if (size < params.min_size || size > params.max_size) continue;
      slots[i] = DetectedCommunity{std::move(cut->community), cut->conductance, cut->connected, seeds[i]};
    }
  });

  std::vector<DetectedCommunity> candidates;
  for (auto& s : slots) {
    if (s) candidates.push_back(std::move(*s));
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const DetectedCommunity& a, const DetectedCommunity& b) {
              if (a.conductance != b.conductance) return a.conductance < b.conductance;
              const auto am = a.community.members();
              const auto bm = b.community.members();
              if (!std::equal(am.begin(), am.end(), bm.begin(), bm.end())) {
                return std::lexicographical_compare(am.begin(), am.end(), bm.begin(), bm.end());
              }
              return a.seed < b.seed;
            });

  std::vector<DetectedCommunity> kept;
  for (auto& cand : candidates) {
    const auto cm = cand.community.members();
    bool drop = false;
    for (const auto& k : kept) {
      const auto km = k.community.members();
      const bool same = std::equal(cm.begin(), cm.end(), km.begin(), km.end());
      if (same || jaccard(cm, km) > params.overlap_jaccard_max) {
        drop = true;
        break;
      }
    }
    if (drop) continue;
    const std::string id = "c" + std::to_string(kept.size());
    kept.push_back({Community(id, {cm.begin(), cm.end()}), cand.conductance, cand.connected, cand.seed});
  }
  return kept;
}

// ---------------------------------------------------------------------------

std::vector<Community> load_communities(std::istream& in, const Graph& g) {
  std::vector<Community> out;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;) tokens.push_back(std::move(t));
    if (tokens.empty() || tokens.front().front() == '#') continue;

    std::string id = std::to_string(out.size());
    std::size_t first = 0;
    if (tokens.front().back() == ':') {
      id = tokens.front().substr(0, tokens.front().size() - 1);
      first = 1;
    }
    if (first == tokens.size()) throw ParseError(lineno, "community '" + id + "' has no members");
    if (!ids.insert(id).second) throw ParseError(lineno, "duplicate community id '" + id + "'");
    std::vector<NodeId> members;
    members.reserve(tokens.size() - first);
    for (std::size_t i = first; i < tokens.size(); ++i) {
      auto v = g.find(tokens[i]);
      if (!v) throw ParseError(lineno, "unknown node label '" + tokens[i] + "'");
      members.push_back(*v);
    }
    try {
      out.emplace_back(id, std::move(members));
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return out;
}

std::vector<Community> load_communities_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open community file '" + path + "'");
  try {
    return load_communities(in, g);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path);
  }
}

void write_communities(std::ostream& out, const Graph& g, std::span<const Community> communities) {
  for (const auto& c : communities) {
    out << c.id() << ':';
    for (NodeId v : c.members()) out << ' ' << g.label(v);
    out << '\n';
  }
}

std::vector<Community> communities_from_attribute(const LoadedGraph& loaded, const std::string& attribute) {
  auto numeric = [](const std::string& s, long long& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  auto less = [&](const std::string& a, const std::string& b) {
    long long x, y;
    if (numeric(a, x) && numeric(b, y)) return x < y;
    return a < b;
  };
  std::map<std::string, std::vector<NodeId>, decltype(less)> groups(less);
  for (NodeId v = 0; v < loaded.node_attributes.size(); ++v) {
    auto it = loaded.node_attributes[v].find(attribute);
    if (it != loaded.node_attributes[v].end()) groups[it->second].push_back(v);
  }
  if (groups.empty()) throw InputError("no node carries attribute '" + attribute + "'");
  std::vector<Community> out;
  for (auto& [value, members] : groups) out.emplace_back(value, std::move(members));
  return out;
}

}  // namespace commchar
