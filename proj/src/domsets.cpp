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

#include "commchar/domsets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "commchar/coverage.hpp"
#include "commchar/error.hpp"

namespace commchar {

std::string to_string(DomMode mode) { return mode == DomMode::kInternal ? "internal" : "external"; }

Criterion Criterion::count(std::size_t k) {
  if (k < 1) throw ConfigError("k must be at least 1");
  return Criterion(Kind::kCount, k, 0.0);
}

Criterion Criterion::ratio(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  return Criterion(Kind::kRatio, 0, p);
}

std::string Criterion::to_string() const {
  if (kind_ == Kind::kCount) return "k=" + std::to_string(k_);
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, p_);
  return "p=" + std::string(buf, res.ptr);
}

double idr(const Graph& g, std::span<const NodeId> subset, const Community& c) {
  std::vector<NodeId> s(subset.begin(), subset.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  const auto n_in = neighbors_in(g, s, c);
  return static_cast<double>(s.size() + n_in.size()) / static_cast<double>(c.size());
}

std::optional<double> edr(const Graph& g, std::span<const NodeId> subset, const Community& c) {
  const auto all = neighbors_out(g, c.members(), c);
  if (all.empty()) return std::nullopt;
  const auto n_out = neighbors_out(g, subset, c);
  return static_cast<double>(n_out.size()) / static_cast<double>(all.size());
}

namespace {

DomSetResult run_greedy(const CommunityIndex& idx, const CoverFamily& family, DomMode mode,
                        const Criterion& criterion) {
  DomSetResult result{mode, criterion, {}, {}, std::nullopt};
  if (mode == DomMode::kExternal && idx.closed()) return result;

  const auto steps = criterion.kind() == Criterion::Kind::kCount
                         ? family.greedy(criterion.k())
                         : family.greedy(family.set_count(), criterion.p());
  const double universe = static_cast<double>(family.universe_size());
  for (const auto& st : steps) {
    const NodeId node = idx.global(st.set);
    result.set.push_back(node);
    result.steps.push_back({node, st.gain, static_cast<double>(st.covered) / universe});
  }
  std::sort(result.set.begin(), result.set.end());
  const std::uint64_t covered = steps.empty() ? 0 : steps.back().covered;
  result.achieved_ratio = static_cast<double>(covered) / universe;
  return result;
}

}  // namespace

DomSetResult greedy_ids(const CommunityIndex& idx, const Criterion& criterion) {
  return run_greedy(idx, CoverFamily::internal(idx), DomMode::kInternal, criterion);
}

DomSetResult greedy_eds(const CommunityIndex& idx, const Criterion& criterion) {
  if (idx.closed()) return run_greedy(idx, CoverFamily(0, {}), DomMode::kExternal, criterion);
  return run_greedy(idx, CoverFamily::external(idx), DomMode::kExternal, criterion);
}

DomSetResult greedy_ids(const Graph& g, const Community& c, const Criterion& criterion) {
  return greedy_ids(CommunityIndex(g, c), criterion);
}

DomSetResult greedy_eds(const Graph& g, const Community& c, const Criterion& criterion) {
  return greedy_eds(CommunityIndex(g, c), criterion);
}

}  // namespace commchar
