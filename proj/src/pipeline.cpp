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

#include "commchar/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "commchar/distribution.hpp"
#include "commchar/domsets.hpp"
#include "commchar/error.hpp"
#include "commchar/keywords.hpp"
#include "commchar/metrics.hpp"
#include "commchar/parallel.hpp"
#include "commchar/rng.hpp"
#include "commchar/table.hpp"
#include "json.hpp"

#ifndef COMMCHAR_VERSION
#define COMMCHAR_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace commchar {

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::kDetect: return "detect";
    case Stage::kDomsets: return "domsets";
    case Stage::kSlopes: return "slopes";
    case Stage::kMetrics: return "metrics";
    case Stage::kKeywords: return "keywords";
    case Stage::kReport: return "report";
    case Stage::kAll: return "all";
  }
  return "unknown";
}

void RunConfig::validate(Stage stage) const {
  if (graph_path.empty()) throw ConfigError("--graph is required");
  if (out_dir.empty()) throw ConfigError("--out must not be empty");
  if (!communities_path.empty() && !communities_attribute.empty()) {
    throw ConfigError("--communities and --communities-attribute are mutually exclusive");
  }
  if (stage == Stage::kDetect && !detection_enabled()) {
    throw ConfigError("the detect stage does not take an external community source");
  }
  if (k < 1) throw ConfigError("--k must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("--p must lie in [0, 1]");
  if (bins < 1) throw ConfigError("--bins must be at least 1");
  if (workers < 1) throw ConfigError("--workers must be at least 1");
  estimator.validate();
  if (detection_enabled()) detect.validate();
  if (keyword_lengths.empty() || keyword_lengths.front() < 1 ||
      !std::is_sorted(keyword_lengths.begin(), keyword_lengths.end())) {
    throw ConfigError("keyword lengths must be positive and ascending");
  }
  for (double t : triangle_thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("triangle thresholds must lie in [0, 1]");
  }
}

namespace {

Cell count_cell(std::size_t v) { return static_cast<std::int64_t>(v); }

Cell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

struct CommunityResults {
  std::optional<DomSetResult> ids_k, ids_p, eds_k, eds_p;
  std::optional<SlopeResult> islope, eslope;
  bool closed = false;
  std::optional<CommunityStats> stats;
};

class Runner {
 public:
  Runner(Stage stage, const RunConfig& cfg, std::ostream& log) : stage_(stage), cfg_(cfg), log_(log) {}

  RunResult run() {
    cfg_.validate(stage_);

    LoadOptions lo;
    lo.strict_undirected = cfg_.strict_undirected;
    loaded_ = load_graph_file(cfg_.graph_path, lo);
    acquire_communities();

    out_ = cfg_.out_dir;
    std::error_code ec;
    fs::create_directories(out_, ec);
    if (ec || !fs::is_directory(out_)) {
      throw InputError("cannot create output directory '" + cfg_.out_dir + "'");
    }
    write_detection();

    const bool all = stage_ == Stage::kAll;
    const bool need_dom = all || stage_ == Stage::kDomsets || stage_ == Stage::kReport;
    const bool need_slopes = all || stage_ == Stage::kSlopes || stage_ == Stage::kReport;
    const bool need_stats = all || stage_ == Stage::kMetrics || stage_ == Stage::kReport;
    if (need_dom || need_slopes || need_stats) compute(need_dom, need_slopes, need_stats);

    if (all || stage_ == Stage::kDomsets) write_domsets();
    if (all || stage_ == Stage::kSlopes) write_slopes();
    if (all || stage_ == Stage::kMetrics) write_metrics();
    if (all || stage_ == Stage::kKeywords) write_keywords();
    if (all || stage_ == Stage::kReport) write_report();
    write_manifest();
    return std::move(result_);
  }

 private:
  const Graph& graph() const { return loaded_.graph; }

  void notice(const std::string& msg) {
    result_.notices.push_back(msg);
    log_ << "commchar: " << msg << '\n';
  }

  std::string table_name(const std::string& stem) const {
    return stem + (cfg_.format == OutputFormat::kJson ? ".json" : ".csv");
  }

  void write_file(const std::string& name, const std::string& content) {
    std::ofstream f(out_ / name, std::ios::binary);
    f << content;
    if (!f) throw InputError("cannot write '" + (out_ / name).string() + "'");
    result_.files.push_back(name);
  }

  void write_table(const std::string& stem, const Table& t) {
    std::ostringstream ss;
    if (cfg_.format == OutputFormat::kJson) {
      t.write_json(ss);
    } else {
      t.write_csv(ss);
    }
    write_file(table_name(stem), ss.str());
  }

  void acquire_communities() {
    if (!cfg_.communities_path.empty()) {
      communities_ = load_communities_file(cfg_.communities_path, graph());
      source_ = "file";
    } else if (!cfg_.communities_attribute.empty()) {
      communities_ = communities_from_attribute(loaded_, cfg_.communities_attribute);
      source_ = "attribute";
    } else {
      DetectParams dp = cfg_.detect;
      dp.workers = cfg_.workers;
      const auto detected = detect_communities(graph(), dp);
      source_ = "detection";
      Table meta({"id", "size", "conductance", "connected", "seed"});
      for (const auto& d : detected) {
        communities_.push_back(d.community);
        meta.add_row({d.community.id(), count_cell(d.community.size()), d.conductance, d.connected,
                      graph().label(d.seed)});
      }
      detection_meta_ = std::move(meta);
    }
    if (communities_.empty()) notice("no communities to characterize");
  }

  void write_detection() {
    if (!detection_meta_) return;
    std::ostringstream ss;
    write_communities(ss, graph(), communities_);
    write_file("communities.txt", ss.str());
    write_table("communities_meta", *detection_meta_);
  }

  void compute(bool dom, bool slopes, bool stats) {
    results_.assign(communities_.size(), {});
    const auto k = Criterion::count(cfg_.k);
    const auto p = Criterion::ratio(cfg_.p);
    parallel_for(communities_.size(), cfg_.workers, [&](std::size_t i) {
      const CommunityIndex idx(graph(), communities_[i]);
      auto& r = results_[i];
      r.closed = idx.closed();
      if (dom) {
        r.ids_k = greedy_ids(idx, k);
        r.ids_p = greedy_ids(idx, p);
        r.eds_k = greedy_eds(idx, k);
        r.eds_p = greedy_eds(idx, p);
      }
      if (slopes) {
        r.islope = islope(idx, p, cfg_.estimator);
        r.eslope = eslope(idx, p, cfg_.estimator);
      }
      if (stats) r.stats = community_stats(graph(), communities_[i]);
    });
  }

  std::string joined_labels(std::span<const NodeId> nodes) const {
    std::string s;
    for (NodeId v : nodes) {
      if (!s.empty()) s.push_back(';');
      s += graph().label(v);
    }
    return s;
  }

  void write_domsets() {
    Table t({"community", "mode", "criterion", "set_size", "achieved_ratio", "closed", "members"});
    for (std::size_t i = 0; i < communities_.size(); ++i) {
      const auto& r = results_[i];
      for (const auto* d : {&*r.ids_k, &*r.ids_p, &*r.eds_k, &*r.eds_p}) {
        t.add_row({communities_[i].id(), to_string(d->mode), d->criterion.to_string(),
                   count_cell(d->set.size()), opt_cell(d->achieved_ratio), d->closed(),
                   joined_labels(d->set)});
      }
    }
    write_table("domsets", t);
  }

  static void add_slope_row(Table& t, const std::string& id, DomMode kind, const std::optional<SlopeResult>& s) {
    if (!s) {
      t.add_row({id, to_string(kind), std::monostate{}, std::monostate{}, std::monostate{},
                 std::monostate{}, std::string("closed"), std::monostate{}, std::monostate{}});
      return;
    }
    std::int64_t samples = 0;
    double stderr_ = 0.0;
    if (const auto* mc = std::get_if<MonteCarloEstimate>(&s->estimator)) {
      samples = static_cast<std::int64_t>(mc->samples);
      stderr_ = mc->standard_error;
    } else {
      samples = static_cast<std::int64_t>(std::get<ExactEstimate>(s->estimator).subsets);
    }
    t.add_row({id, to_string(kind), count_cell(s->subset_size), s->observed, s->expected, s->slope,
               estimator_name(s->estimator), samples, stderr_});
  }

  void write_slopes() {
    Table t({"community", "kind", "K", "observed", "expected", "slope", "estimator", "samples", "stderr"});
    for (std::size_t i = 0; i < communities_.size(); ++i) {
      add_slope_row(t, communities_[i].id(), DomMode::kInternal, results_[i].islope);
      add_slope_row(t, communities_[i].id(), DomMode::kExternal, results_[i].eslope);
    }
    write_table("slopes", t);
  }

  std::vector<CommunityStats> all_stats() const {
    std::vector<CommunityStats> v;
    for (const auto& r : results_) v.push_back(*r.stats);
    return v;
  }

  void write_metrics() {
    Table t({"community", "size", "apl", "diameter", "ccc", "triangles", "connected_triples",
             "component_count", "boundary_size"});
    for (const auto& s : all_stats()) {
      t.add_row({s.id, count_cell(s.size), s.apl, static_cast<std::int64_t>(s.diameter), s.ccc,
                 count_cell(s.triangles), count_cell(s.connected_triples), count_cell(s.component_count),
                 count_cell(s.boundary_size)});
    }
    write_table("community_stats", t);

    const TriangleCount tc = count_triangles(graph());
    Table net({"nodes", "edges", "triangles", "connected_triples", "ncc"});
    net.add_row({count_cell(graph().node_count()), count_cell(graph().edge_count()), count_cell(tc.triangles),
                 count_cell(tc.connected_triples), clustering_coefficient(graph())});
    write_table("network", net);

    Table split({"threshold", "group", "count", "mean_triangles", "empty"});
    const auto stats = all_stats();
    for (double th : cfg_.triangle_thresholds) {
      const auto ts = triangle_split_analysis(stats, th);
      split.add_row({th, std::string("above"), count_cell(ts.above.count), ts.above.mean_triangles, ts.above.empty});
      split.add_row({th, std::string("at_most"), count_cell(ts.at_most.count), ts.at_most.mean_triangles,
                     ts.at_most.empty});
    }
    write_table("triangle_split", split);
  }

  void write_keywords() {
    if (cfg_.metadata_path.empty()) {
      notice("metadata not supplied; keyword stage skipped");
      return;
    }
    const Metadata md = Metadata::load_file(cfg_.metadata_path, graph());
    const std::size_t longest = cfg_.keyword_lengths.back();
    Table lists({"community", "rank", "keyword", "community_count", "ids_count"});
    std::string jsonl;
    std::vector<std::vector<KeywordEntry>> per_comm(communities_.size());
    std::vector<PredictionReport> reports(communities_.size());
    parallel_for(communities_.size(), cfg_.workers, [&](std::size_t i) {
      per_comm[i] = build_keyword_list(graph(), communities_[i], md, cfg_.p);
      reports[i] = predict_keywords(communities_[i], md, per_comm[i], longest);
    });
    for (std::size_t i = 0; i < communities_.size(); ++i) {
      for (std::size_t r = 0; r < per_comm[i].size(); ++r) {
        const auto& e = per_comm[i][r];
        lists.add_row({communities_[i].id(), count_cell(r + 1), e.keyword, count_cell(e.community_count),
                       count_cell(e.ids_count)});
      }
      for (const auto& paper : reports[i].papers) {
        nlohmann::ordered_json obj;
        obj["community"] = communities_[i].id();
        obj["label"] = graph().label(paper.node);
        obj["prefix_length"] = longest;
        obj["predicted"] = nlohmann::ordered_json::array();
        obj["fields"] = nlohmann::ordered_json::array();
        for (const auto& hit : paper.predictions) {
          obj["predicted"].push_back(hit.keyword);
          obj["fields"].push_back(to_string(hit.field));
        }
        jsonl += obj.dump() + "\n";
      }
    }
    write_table("keyword_lists", lists);
    write_file("keyword_predictions.jsonl", jsonl);

    const auto curve = prediction_curve(graph(), communities_, md, cfg_.p, cfg_.keyword_lengths);
    Table ct({"keyword_number", "predicted_paper_number"});
    for (const auto& pt : curve) ct.add_row({count_cell(pt.prefix_length), count_cell(pt.predicted_papers)});
    write_table("keyword_curve", ct);
  }

  void write_distribution(Table& summary, const std::string& name, const std::vector<double>& values) {
    if (values.size() < 2) {
      notice("distribution of " + name + " skipped: fewer than two values");
      return;
    }
    const auto d = summarize(name, values, cfg_.bins);
    Table t({"series", "x", "width", "count", "fraction"});
    for (const auto& b : d.histogram) {
      t.add_row({std::string("histogram"), b.lower, b.width, count_cell(b.count), std::monostate{}});
    }
    for (const auto& c : d.cumulative) {
      t.add_row({std::string("cumulative"), c.value, std::monostate{}, std::monostate{}, c.fraction});
    }
    write_table("dist_" + name, t);
    summary.add_row({name, count_cell(d.count), d.mean, d.stddev, d.skewness, d.excess_kurtosis,
                     opt_cell(d.ks_statistic), d.degenerate});
  }

  void write_report() {
    if (communities_.empty()) {
      notice("summary skipped: no communities");
      return;
    }
    std::vector<CommunityProfile> profiles;
    std::vector<double> islopes, eslopes, sizes, cccs;
    for (std::size_t i = 0; i < communities_.size(); ++i) {
      const auto& r = results_[i];
      CommunityProfile pr;
      pr.stats = *r.stats;
      pr.idr_k = *r.ids_k->achieved_ratio;
      pr.edr_k = r.eds_k->achieved_ratio;
      pr.ids_p_size = r.ids_p->set.size();
      if (!r.eds_p->closed()) pr.eds_p_size = r.eds_p->set.size();
      pr.islope = r.islope->slope;
      if (r.eslope) pr.eslope = r.eslope->slope;
      profiles.push_back(pr);
      islopes.push_back(pr.islope);
      if (pr.eslope) eslopes.push_back(*pr.eslope);
      sizes.push_back(static_cast<double>(pr.stats.size));
      cccs.push_back(pr.stats.ccc);
    }
    const auto s = aggregate_stats(profiles, clustering_coefficient(graph()));
    Table t({"network", "communities", "closed_communities", "IDR", "EDR", "IDN", "EDN", "ISlope", "ESlope",
             "APL", "D", "CCC", "NCC"});
    t.add_row({fs::path(cfg_.graph_path).stem().string(), count_cell(s.communities),
               count_cell(s.closed_communities), s.idr, s.edr, s.idn, s.edn, s.islope, s.eslope, s.apl,
               s.diameter, s.ccc, s.ncc});
    write_table("summary", t);

    Table dists({"variable", "count", "mean", "stddev", "skewness", "excess_kurtosis", "ks_stat", "degenerate"});
    write_distribution(dists, "islope", islopes);
    write_distribution(dists, "eslope", eslopes);
    write_distribution(dists, "size", sizes);
    write_distribution(dists, "ccc", cccs);
    write_table("distributions", dists);
  }

  void write_manifest() {
    nlohmann::ordered_json m;
    m["tool"] = "commchar";
    m["version"] = COMMCHAR_VERSION;
    m["stage"] = to_string(stage_);
    auto& c = m["config"];
    c["graph"] = cfg_.graph_path;
    c["communities"] = cfg_.communities_path;
    c["communities_attribute"] = cfg_.communities_attribute;
    c["metadata"] = cfg_.metadata_path;
    c["strict_undirected"] = cfg_.strict_undirected;
    c["k"] = cfg_.k;
    c["p"] = cfg_.p;
    c["alpha"] = cfg_.detect.alpha;
    c["epsilon"] = cfg_.detect.epsilon;
    c["min_size"] = cfg_.detect.min_size;
    c["max_size"] = cfg_.detect.max_size;
    c["overlap_jaccard_max"] = cfg_.detect.overlap_jaccard_max;
    c["samples"] = cfg_.estimator.samples;
    c["enum_cap"] = cfg_.estimator.enumeration_cap;
    c["seed"] = cfg_.estimator.seed;
    c["detect_seed"] = cfg_.detect.rng_seed;
    c["bins"] = cfg_.bins;
    c["keyword_lengths"] = cfg_.keyword_lengths;
    c["triangle_thresholds"] = cfg_.triangle_thresholds;
    c["format"] = cfg_.format == OutputFormat::kJson ? "json" : "csv";
    c["workers"] = cfg_.workers;
    auto& g = m["graph"];
    g["nodes"] = graph().node_count();
    g["edges"] = graph().edge_count();
    g["self_loops_dropped"] = loaded_.report.self_loops;
    g["duplicates_dropped"] = loaded_.report.duplicate_edges;
    g["reversed_pairs_merged"] = loaded_.report.reversed_pairs;
    m["communities"] = {{"source", source_}, {"count", communities_.size()}};
    m["notices"] = result_.notices;
    auto& outs = m["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : result_.files) {
      std::ifstream in(out_ / f, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      const std::string bytes = ss.str();
      char hex[17];
      std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
      outs.push_back({{"file", f}, {"bytes", bytes.size()}, {"fnv1a64", hex}});
    }
    const std::string text = m.dump(2) + "\n";
    std::ofstream f(out_ / "manifest.json", std::ios::binary);
    f << text;
    if (!f) throw InputError("cannot write manifest");
    result_.files.push_back("manifest.json");
  }

  Stage stage_;
  const RunConfig& cfg_;
  std::ostream& log_;
  fs::path out_;
  LoadedGraph loaded_;
  std::vector<Community> communities_;
  std::optional<Table> detection_meta_;
  std::string source_;
  std::vector<CommunityResults> results_;
  RunResult result_;
};

}  // namespace

RunResult run_pipeline(Stage stage, const RunConfig& config, std::ostream& log) {
  return Runner(stage, config, log).run();
}

}  // namespace commchar
