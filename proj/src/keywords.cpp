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

#include "commchar/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <unordered_set>

#include "commchar/domsets.hpp"
#include "commchar/error.hpp"

namespace commchar {
namespace {

char lower(char ch) { return static_cast<char>(std::tolower(static_cast<unsigned char>(ch))); }

bool is_word_char(char ch) {
  const auto u = static_cast<unsigned char>(ch);
  return u >= 0x80 || std::isalnum(u);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
}

}  // namespace

std::string normalize_keyword(std::string_view keyword) {
  std::string out;
  bool pending_space = false;
  for (char ch : keyword) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(lower(ch));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (is_word_char(ch)) {
      cur.push_back(lower(ch));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool contains_phrase(std::span<const std::string> text, std::span<const std::string> phrase) {
  if (phrase.empty() || phrase.size() > text.size()) return false;
  return std::search(text.begin(), text.end(), phrase.begin(), phrase.end()) != text.end();
}

// ---------------------------------------------------------------------------

void Metadata::insert(NodeId v, NodeMetadata record) { records_[v] = std::move(record); }

const NodeMetadata* Metadata::find(NodeId v) const {
  auto it = records_.find(v);
  return it == records_.end() ? nullptr : &it->second;
}

Metadata Metadata::load(std::istream& in, const Graph& g) {
  Metadata md;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line.front() == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() > 4) throw ParseError(lineno, "expected at most 4 tab-separated fields");
    fields.resize(4);
    NodeMetadata rec;
    rec.label = fields[0];
    auto v = g.find(rec.label);
    if (!v) throw ParseError(lineno, "unknown node label '" + rec.label + "'");
    if (md.find(*v)) throw ParseError(lineno, "duplicate metadata for '" + rec.label + "'");
    rec.title = std::move(fields[1]);
    rec.abstract = std::move(fields[2]);
    std::unordered_set<std::string> seen;
    std::size_t start = 0;
    const std::string& kw = fields[3];
    while (start <= kw.size()) {
      const std::size_t semi = kw.find(';', start);
      const std::size_t end = semi == std::string::npos ? kw.size() : semi;
      std::string k = normalize_keyword(std::string_view(kw).substr(start, end - start));
      if (!k.empty() && seen.insert(k).second) rec.keywords.push_back(std::move(k));
      start = end + 1;
    }
    md.insert(*v, std::move(rec));
  }
  return md;
}

Metadata Metadata::load_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open metadata file '" + path + "'");
  try {
    return load(in, g);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path);
  }
}

// ---------------------------------------------------------------------------

std::vector<KeywordEntry> build_keyword_list(const Graph& g, const Community& c, const Metadata& metadata,
                                             double p) {
  const DomSetResult ids = greedy_ids(g, c, Criterion::ratio(p));
  std::map<std::string, KeywordEntry> entries;
  for (NodeId v : ids.set) {
    if (const auto* rec = metadata.find(v)) {
      for (const auto& k : rec->keywords) {
        auto& e = entries.try_emplace(k, KeywordEntry{k, 0, 0}).first->second;
        ++e.ids_count;
      }
    }
  }
  for (NodeId v : c.members()) {
    if (const auto* rec = metadata.find(v)) {
      for (const auto& k : rec->keywords) {
        if (auto it = entries.find(k); it != entries.end()) ++it->second.community_count;
      }
    }
  }
  std::vector<KeywordEntry> list;
  list.reserve(entries.size());
  for (auto& [k, e] : entries) list.push_back(std::move(e));
  std::stable_sort(list.begin(), list.end(), [](const KeywordEntry& a, const KeywordEntry& b) {
    return a.community_count > b.community_count;
  });
  return list;
}

std::string to_string(SourceField field) { return field == SourceField::kTitle ? "title" : "abstract"; }

PredictionReport predict_keywords(const Community& c, const Metadata& metadata,
                                  std::span<const KeywordEntry> list, std::size_t prefix_length) {
  if (prefix_length < 1) throw ConfigError("keyword prefix length must be at least 1");
  const std::size_t use = std::min(prefix_length, list.size());
  std::vector<std::vector<std::string>> phrases;
  phrases.reserve(use);
  for (std::size_t j = 0; j < use; ++j) phrases.push_back(tokenize(list[j].keyword));

  PredictionReport report;
  report.community_id = c.id();
  report.prefix_length = prefix_length;
  for (NodeId v : c.members()) {
    const NodeMetadata* rec = metadata.find(v);
    if (rec == nullptr) {
      ++report.skipped;
      continue;
    }
    if (!rec->keywords.empty()) continue;
    if (blank(rec->title) && blank(rec->abstract)) {
      ++report.skipped;
      continue;
    }
    const auto title = tokenize(rec->title);
    const auto abstract = tokenize(rec->abstract);
    PaperPrediction paper{v, {}};
    for (std::size_t j = 0; j < use; ++j) {
      if (contains_phrase(title, phrases[j])) {
        paper.predictions.push_back({list[j].keyword, SourceField::kTitle});
      } else if (contains_phrase(abstract, phrases[j])) {
        paper.predictions.push_back({list[j].keyword, SourceField::kAbstract});
      }
    }
    if (!paper.predictions.empty()) ++report.predicted_papers;
    report.papers.push_back(std::move(paper));
  }
  return report;
}

std::vector<CurvePoint> prediction_curve(const Graph& g, std::span<const Community> communities,
                                         const Metadata& metadata, double p,
                                         std::span<const std::size_t> lengths) {
  if (!std::is_sorted(lengths.begin(), lengths.end())) {
    throw ConfigError("keyword prefix lengths must be ascending");
  }
  if (lengths.empty()) return {};
  if (lengths.front() < 1) throw ConfigError("keyword prefix length must be at least 1");
  const std::size_t longest = lengths.back();

  // Papers predicted at the longest prefix, with the shortest prefix at which
  // any community predicts them.
  std::unordered_map<NodeId, std::size_t> first_hit;
  for (const auto& c : communities) {
    const auto list = build_keyword_list(g, c, metadata, p);
    const auto report = predict_keywords(c, metadata, list, longest);
    for (const auto& paper : report.papers) {
      if (paper.predictions.empty()) continue;
      const auto& kw = paper.predictions.front().keyword;
      std::size_t pos = 0;
      while (list[pos].keyword != kw) ++pos;
      auto [it, inserted] = first_hit.emplace(paper.node, pos + 1);
      if (!inserted) it->second = std::min(it->second, pos + 1);
    }
  }
  std::vector<CurvePoint> curve;
  for (std::size_t len : lengths) {
    std::size_t count = 0;
    for (const auto& [node, need] : first_hit) count += need <= len ? 1 : 0;
    curve.push_back({len, count});
  }
  return curve;
}

}  // namespace commchar
