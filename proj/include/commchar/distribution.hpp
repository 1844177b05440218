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

#ifndef COMMCHAR_DISTRIBUTION_HPP_
#define COMMCHAR_DISTRIBUTION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace commchar {

struct HistogramBin {
  double lower;
  double width;
  std::size_t count;
};

struct CumulativePoint {
  double value;
  double fraction;  // share of samples <= value
};

struct DistributionSummary {
  std::string variable;
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;           // n - 1 denominator
  double skewness = 0.0;         // adjusted Fisher-Pearson G1; NaN if n < 3 or stddev = 0
  double excess_kurtosis = 0.0;  // G2; NaN if n < 4 or stddev = 0
  std::vector<HistogramBin> histogram;
  std::vector<CumulativePoint> cumulative;  // one point per distinct value
  // Kolmogorov-Smirnov distance to N(mean, stddev); absent when degenerate.
  std::optional<double> ks_statistic;
  bool degenerate = false;  // stddev == 0
};

// Moments, equal-width histogram over [min, max], empirical CDF and the KS
// distance to the fitted normal. Requires at least two finite values.
DistributionSummary summarize(std::string variable, std::span<const double> values,
                              std::size_t bin_count = 20);

}  // namespace commchar

#endif  // COMMCHAR_DISTRIBUTION_HPP_
