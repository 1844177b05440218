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

#include "commchar/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "commchar/error.hpp"

namespace commchar {
namespace {

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::sqrt(2.0)));
}

}  // namespace

DistributionSummary summarize(std::string variable, std::span<const double> values, std::size_t bin_count) {
  if (values.size() < 2) throw InputError("distribution of '" + variable + "' needs at least two values");
  if (bin_count < 1) throw ConfigError("bin count must be at least 1");
  std::vector<double> x(values.begin(), values.end());
  for (double v : x) {
    if (!std::isfinite(v)) throw InputError("distribution of '" + variable + "' has a non-finite value");
  }
  // Everything below works on the sorted sample, so the summary does not
  // depend on input order.
  std::sort(x.begin(), x.end());
  const auto n = static_cast<double>(x.size());

  DistributionSummary s;
  s.variable = std::move(variable);
  s.count = x.size();
  double sum = 0.0;
  for (double v : x) sum += v;
  s.mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - s.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  s.stddev = std::sqrt(m2 * n / (n - 1.0));

  const double lo = x.front(), hi = x.back();
  s.degenerate = s.stddev == 0.0 || lo == hi;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (s.degenerate) {
    s.stddev = 0.0;
    s.skewness = nan;
    s.excess_kurtosis = nan;
    s.histogram.push_back({lo, 0.0, x.size()});
  } else {
    const double g1 = m3 / std::pow(m2, 1.5);
    const double g2 = m4 / (m2 * m2) - 3.0;
    s.skewness = x.size() >= 3 ? std::sqrt(n * (n - 1.0)) / (n - 2.0) * g1 : nan;
    s.excess_kurtosis =
        x.size() >= 4 ? (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * g2 + 6.0) : nan;

    const double width = (hi - lo) / static_cast<double>(bin_count);
    s.histogram.resize(bin_count);
    for (std::size_t b = 0; b < bin_count; ++b) {
      s.histogram[b] = {lo + static_cast<double>(b) * width, width, 0};
    }
    for (double v : x) {
      auto b = static_cast<std::size_t>((v - lo) / width);
      s.histogram[std::min(b, bin_count - 1)].count += 1;
    }

    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double f = normal_cdf(x[i], s.mean, s.stddev);
      d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    s.ks_statistic = std::clamp(d, 0.0, 1.0);
  }

  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i + 1 < x.size() && x[i + 1] == x[i]) continue;
    s.cumulative.push_back({x[i], static_cast<double>(i + 1) / n});
  }
  return s;
}

}  // namespace commchar
