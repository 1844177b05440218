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

// Command-line front end: one subcommand per pipeline stage.
//
//   commchar all --graph football.gml --communities-attribute value --out run1
//   commchar detect --graph ca-GrQc.txt --min-size 5 --max-size 200 --workers 8
//
// Exit codes: 0 success, 1 input error, 2 configuration error, 3 internal
// invariant failure.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commchar/error.hpp"
#include "commchar/kernels.hpp"
#include "commchar/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kInputError = 1, kConfigError = 2, kInternalError = 3 };

struct Options {
  commchar::RunConfig config;
  std::string format = "csv";
  std::string seed_strategy = "all";
  std::vector<std::string> seed_labels;
  std::string kernels = "auto";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Options& o) {
  auto& c = o.config;
  sub->add_option("--graph", c.graph_path, "Edge list (or .gml) file")->required();
  sub->add_option("--communities", c.communities_path, "Community file; detection runs when omitted");
  sub->add_option("--communities-attribute", c.communities_attribute,
                  "Use a GML node attribute (e.g. value) as the community assignment");
  sub->add_option("--metadata", c.metadata_path, "Node metadata TSV for the keyword stage");
  sub->add_flag("--strict", c.strict_undirected, "Reject inputs listing both (u,v) and (v,u)");
  sub->add_option("--k", c.k, "Size of the k-IDS / k-EDS")->capture_default_str();
  sub->add_option("--p", c.p, "Ratio target of the p-IDS / p-EDS")->capture_default_str();
  sub->add_option("--alpha", c.detect.alpha, "PPR teleport probability")->capture_default_str();
  sub->add_option("--epsilon", c.detect.epsilon, "PPR push tolerance")->capture_default_str();
  sub->add_option("--min-size", c.detect.min_size, "Smallest detected community")->capture_default_str();
  sub->add_option("--max-size", c.detect.max_size, "Largest detected community")->capture_default_str();
  sub->add_option("--overlap-max", c.detect.overlap_jaccard_max,
                  "Drop detected communities whose Jaccard overlap with a better one exceeds this")
      ->capture_default_str();
  sub->add_option("--seed-strategy", o.seed_strategy, "Detection seeds: all, sample or list")
      ->check(CLI::IsMember({"all", "sample", "list"}))
      ->capture_default_str();
  sub->add_option("--seed-sample", c.detect.sample_size, "Number of random seeds for --seed-strategy sample");
  sub->add_option("--seed-nodes", o.seed_labels, "Seed node labels for --seed-strategy list")->delimiter(',');
  sub->add_option("--samples", c.estimator.samples, "Monte Carlo samples")->capture_default_str();
  sub->add_option("--enum-cap", c.estimator.enumeration_cap, "Largest subset count enumerated exactly")
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "Global RNG seed")->capture_default_str();
  sub->add_option("--bins", c.bins, "Histogram bins")->capture_default_str();
  sub->add_option("--keyword-lengths", c.keyword_lengths, "Keyword list prefix lengths")->delimiter(',');
  sub->add_option("--triangle-thresholds", c.triangle_thresholds, "CCC split thresholds")->delimiter(',');
  sub->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--format", o.format, "Table format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--workers", c.workers, "Worker threads")->capture_default_str();
  sub->add_option("--kernels", o.kernels, "Kernel backend: auto, scalar or avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
}

// Seed labels can only be resolved once the graph is loaded; the pipeline
// takes indices, so resolve them here against a first load.
void resolve_seed_labels(Options& o) {
  auto& d = o.config.detect;
  if (o.seed_strategy == "all") {
    d.seeds = commchar::SeedStrategy::kAllNodes;
  } else if (o.seed_strategy == "sample") {
    d.seeds = commchar::SeedStrategy::kRandomSample;
  } else {
    d.seeds = commchar::SeedStrategy::kProvided;
    if (o.seed_labels.empty()) throw commchar::ConfigError("--seed-strategy list needs --seed-nodes");
    commchar::LoadOptions lo;
    lo.strict_undirected = o.config.strict_undirected;
    const auto loaded = commchar::load_graph_file(o.config.graph_path, lo);
    for (const auto& label : o.seed_labels) {
      auto v = loaded.graph.find(label);
      if (!v) throw commchar::ConfigError("seed node '" + label + "' is not in the graph");
      d.provided_seeds.push_back(*v);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community characterization: dominating sets, slopes and structure statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(COMMCHAR_VERSION));
  Options opts;
  const std::map<std::string, std::pair<commchar::Stage, std::string>> stages{
      {"detect", {commchar::Stage::kDetect, "Find communities by PPR sweep cuts"}},
      {"domsets", {commchar::Stage::kDomsets, "Greedy internal/external dominating sets"}},
      {"slopes", {commchar::Stage::kSlopes, "Internal and external slopes"}},
      {"metrics", {commchar::Stage::kMetrics, "Distances, clustering and triangles"}},
      {"keywords", {commchar::Stage::kKeywords, "Keyword prediction from the internal dominating set"}},
      {"report", {commchar::Stage::kReport, "Summary row and distributions"}},
      {"all", {commchar::Stage::kAll, "Every stage"}},
  };
  std::map<CLI::App*, commchar::Stage> by_app;
  for (const auto& [name, entry] : stages) by_app[app.add_subcommand(name, entry.second)] = entry.first;
  for (auto& [sub, stage] : by_app) add_common(sub, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    commchar::Stage stage = commchar::Stage::kAll;
    for (auto& [sub, st] : by_app) {
      if (sub->parsed()) stage = st;
    }
    opts.config.format = opts.format == "json" ? commchar::OutputFormat::kJson : commchar::OutputFormat::kCsv;
    opts.config.estimator.seed = opts.seed;
    opts.config.detect.rng_seed = opts.seed;
    if (opts.kernels == "scalar") commchar::kernels::set_backend(commchar::kernels::Backend::kScalar);
    if (opts.kernels == "avx2") commchar::kernels::set_backend(commchar::kernels::Backend::kAvx2);
    opts.config.validate(stage);
    if (opts.config.detection_enabled()) resolve_seed_labels(opts);

    const auto result = commchar::run_pipeline(stage, opts.config, std::cerr);
    for (const auto& f : result.files) std::cout << opts.config.out_dir << '/' << f << '\n';
    return kOk;
  } catch (const commchar::ConfigError& e) {
    std::cerr << "commchar: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const commchar::InputError& e) {
    std::cerr << "commchar: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "commchar: internal error: " << e.what() << '\n';
    return kInternalError;
  }
}
