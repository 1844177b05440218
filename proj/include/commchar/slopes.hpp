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

#ifndef COMMCHAR_SLOPES_HPP_
#define COMMCHAR_SLOPES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "commchar/domsets.hpp"
#include "commchar/graph.hpp"

namespace commchar {

struct EstimatorParams {
  // Exact enumeration is used while C(|C|, K) <= enumeration_cap.
  std::uint64_t enumeration_cap = 100'000;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ExactEstimate {
  std::uint64_t subsets;
};

struct MonteCarloEstimate {
  std::uint64_t samples;
  std::uint64_t stream_seed;  // derived from (seed, community id)
  double standard_error;
};

using EstimatorRecord = std::variant<ExactEstimate, MonteCarloEstimate>;

struct Expectation {
  double value;
  EstimatorRecord estimator;
};

// Mean IDR (or EDR) of a uniformly random size-k subset of the community.
// nullopt for external mode on a closed community. Requires k <= |C|; k = 0
// yields 0 exactly.
std::optional<Expectation> expected_ratio(const CommunityIndex& idx, std::size_t k, DomMode kind,
                                          const EstimatorParams& params);
std::optional<Expectation> expected_ratio(const Graph& g, const Community& c, std::size_t k,
                                          DomMode kind, const EstimatorParams& params);

struct SlopeResult {
  DomMode kind;
  std::size_t subset_size;  // K
  double observed;          // ratio of the greedy set
  double expected;          // mean ratio of random size-K subsets
  double slope;             // observed - expected
  EstimatorRecord estimator;
};

// ISlope: the greedy set is chosen by `criterion` (p-IDS by default usage,
// or k-IDS for the fixed-size variant).
SlopeResult islope(const CommunityIndex& idx, const Criterion& criterion, const EstimatorParams& params);
SlopeResult islope(const Graph& g, const Community& c, double p, const EstimatorParams& params);

// ESlope; nullopt on closed communities.
std::optional<SlopeResult> eslope(const CommunityIndex& idx, const Criterion& criterion,
                                  const EstimatorParams& params);
std::optional<SlopeResult> eslope(const Graph& g, const Community& c, double p,
                                  const EstimatorParams& params);

std::string estimator_name(const EstimatorRecord& record);

}  // namespace commchar

#endif  // COMMCHAR_SLOPES_HPP_
