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

#ifndef COMMCHAR_PIPELINE_HPP_
#define COMMCHAR_PIPELINE_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "commchar/detect.hpp"
#include "commchar/slopes.hpp"

namespace commchar {

enum class Stage { kDetect, kDomsets, kSlopes, kMetrics, kKeywords, kReport, kAll };
enum class OutputFormat { kCsv, kJson };

std::string to_string(Stage stage);

struct RunConfig {
  std::string graph_path;
  // Community source: a community file, a GML node attribute, or (when both
  // are empty) detection.
  std::string communities_path;
  std::string communities_attribute;
  std::string metadata_path;
  bool strict_undirected = false;

  DetectParams detect;
  std::size_t k = 5;
  double p = 0.8;
  EstimatorParams estimator;
  std::size_t bins = 20;
  std::vector<std::size_t> keyword_lengths{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  std::vector<double> triangle_thresholds{0.6, 0.8};

  std::string out_dir = "out";
  OutputFormat format = OutputFormat::kCsv;
  std::size_t workers = 1;

  bool detection_enabled() const { return communities_path.empty() && communities_attribute.empty(); }

  // Throws ConfigError on any out-of-range parameter.
  void validate(Stage stage) const;
};

struct RunResult {
  std::vector<std::string> files;  // relative to out_dir, in write order
  std::vector<std::string> notices;
};

// Runs one stage (or all of them) and writes its artifacts plus
// manifest.json into config.out_dir. Notices are also written to `log`.
RunResult run_pipeline(Stage stage, const RunConfig& config, std::ostream& log);

}  // namespace commchar

#endif  // COMMCHAR_PIPELINE_HPP_
