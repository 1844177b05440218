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

#include "commchar/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <vector>

#include "commchar/coverage.hpp"
#include "commchar/error.hpp"
#include "commchar/rng.hpp"

namespace commchar {
namespace {

// C(n, k), or cap + 1 once the value exceeds cap.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

Expectation monte_carlo(const CoverFamily& family, std::size_t k, const EstimatorParams& params,
                        std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = family.set_count();
  const double universe = static_cast<double>(family.universe_size());
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  auto scratch = family.make_scratch();

  // Welford running moments of the per-sample ratio.
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t s = 1; s <= params.samples; ++s) {
    // Partial Fisher-Yates: perm[0, k) becomes a uniform k-subset.
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t pick = j + uniform_below(rng, n - j);
      std::swap(perm[j], perm[pick]);
    }
    const double x =
        static_cast<double>(family.union_size({perm.data(), k}, scratch)) / universe;
    const double delta = x - mean;
    mean += delta / static_cast<double>(s);
    m2 += delta * (x - mean);
  }
  const double n_samples = static_cast<double>(params.samples);
  const double variance = params.samples > 1 ? m2 / (n_samples - 1.0) : 0.0;
  return {mean, MonteCarloEstimate{params.samples, seed, std::sqrt(variance / n_samples)}};
}

}  // namespace

void EstimatorParams::validate() const {
  if (samples < 2) throw ConfigError("Monte Carlo sample count must be at least 2");
}

std::optional<Expectation> expected_ratio(const CommunityIndex& idx, std::size_t k, DomMode kind,
                                          const EstimatorParams& params) {
  params.validate();
  if (k > idx.size()) throw std::invalid_argument("subset size exceeds community size");
  if (kind == DomMode::kExternal && idx.closed()) return std::nullopt;
  if (k == 0) return Expectation{0.0, ExactEstimate{1}};

  const CoverFamily family =
      kind == DomMode::kInternal ? CoverFamily::internal(idx) : CoverFamily::external(idx);
  const std::uint64_t subsets = binomial_capped(idx.size(), k, params.enumeration_cap);
  if (subsets <= params.enumeration_cap) {
    const auto total = family.enumerate_unions(k);
    const double value = static_cast<double>(total.covered) /
                         (static_cast<double>(total.subsets) *
                          static_cast<double>(family.universe_size()));
    return Expectation{value, ExactEstimate{total.subsets}};
  }
  // Member order is the global index order, so the stream depends only on
  // the community id and the global seed.
  return monte_carlo(family, k, params, stream_seed(params.seed, idx.id()));
}

std::optional<Expectation> expected_ratio(const Graph& g, const Community& c, std::size_t k,
                                          DomMode kind, const EstimatorParams& params) {
  return expected_ratio(CommunityIndex(g, c), k, kind, params);
}

namespace {

SlopeResult make_slope(const DomSetResult& greedy, const Expectation& e) {
  const double observed = *greedy.achieved_ratio;
  return SlopeResult{greedy.mode, greedy.set.size(), observed, e.value, observed - e.value, e.estimator};
}

}  // namespace

SlopeResult islope(const CommunityIndex& idx, const Criterion& criterion, const EstimatorParams& params) {
  const DomSetResult ids = greedy_ids(idx, criterion);
  return make_slope(ids, *expected_ratio(idx, ids.set.size(), DomMode::kInternal, params));
}

SlopeResult islope(const Graph& g, const Community& c, double p, const EstimatorParams& params) {
  return islope(CommunityIndex(g, c), Criterion::ratio(p), params);
}

std::optional<SlopeResult> eslope(const CommunityIndex& idx, const Criterion& criterion,
                                  const EstimatorParams& params) {
  if (idx.closed()) return std::nullopt;
  const DomSetResult eds = greedy_eds(idx, criterion);
  return make_slope(eds, *expected_ratio(idx, eds.set.size(), DomMode::kExternal, params));
}

std::optional<SlopeResult> eslope(const Graph& g, const Community& c, double p,
                                  const EstimatorParams& params) {
  return eslope(CommunityIndex(g, c), Criterion::ratio(p), params);
}

std::string estimator_name(const EstimatorRecord& record) {
  return std::holds_alternative<ExactEstimate>(record) ? "exact" : "monte_carlo";
}

}  // namespace commchar
