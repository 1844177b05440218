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

#ifndef COMMCHAR_KEYWORDS_HPP_
#define COMMCHAR_KEYWORDS_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "commchar/graph.hpp"

namespace commchar {

struct NodeMetadata {
  std::string label;
  std::string title;
  std::string abstract;
  std::vector<std::string> keywords;  // normalized, deduplicated, in file order
};

// Per-node bibliographic records. One record per line:
//   label <TAB> title <TAB> abstract <TAB> keyword;keyword;...
// Trailing fields may be omitted. Every label must exist in the graph.
class Metadata {
 public:
  static Metadata load(std::istream& in, const Graph& g);
  static Metadata load_file(const std::string& path, const Graph& g);

  void insert(NodeId v, NodeMetadata record);
  const NodeMetadata* find(NodeId v) const;
  std::size_t size() const { return records_.size(); }

 private:
  std::unordered_map<NodeId, NodeMetadata> records_;
};

// Lowercased, trimmed, inner whitespace collapsed to single spaces.
std::string normalize_keyword(std::string_view keyword);

// Lowercased alphanumeric tokens; every other ASCII character separates.
std::vector<std::string> tokenize(std::string_view text);

// True when `phrase` occurs as a contiguous token run in `text`.
bool contains_phrase(std::span<const std::string> text, std::span<const std::string> phrase);

struct KeywordEntry {
  std::string keyword;
  std::size_t community_count;  // members of C listing it (the ordering key)
  std::size_t ids_count;        // members of the IDS listing it
};

// Keywords listed by members of the greedy p-IDS, ordered by how many
// community members list them (descending), ties lexicographic.
std::vector<KeywordEntry> build_keyword_list(const Graph& g, const Community& c, const Metadata& metadata,
                                             double p);

enum class SourceField { kTitle, kAbstract };
std::string to_string(SourceField field);

struct KeywordHit {
  std::string keyword;
  SourceField field;  // title wins when both match
};

struct PaperPrediction {
  NodeId node;
  std::vector<KeywordHit> predictions;  // in keyword-list order
};

struct PredictionReport {
  std::string community_id;
  std::size_t prefix_length = 0;
  std::vector<PaperPrediction> papers;  // members without listed keywords
  std::size_t predicted_papers = 0;     // papers with at least one hit
  std::size_t skipped = 0;              // no record, or no title and no abstract
};

// For each member without listed keywords, confirms every keyword among the
// first `prefix_length` entries of `list` that appears in its title or
// abstract.
PredictionReport predict_keywords(const Community& c, const Metadata& metadata,
                                  std::span<const KeywordEntry> list, std::size_t prefix_length);

struct CurvePoint {
  std::size_t prefix_length;
  std::size_t predicted_papers;  // distinct papers network-wide
};

// Predicted-paper counts for each prefix length (must be ascending).
std::vector<CurvePoint> prediction_curve(const Graph& g, std::span<const Community> communities,
                                         const Metadata& metadata, double p,
                                         std::span<const std::size_t> lengths);

}  // namespace commchar

#endif  // COMMCHAR_KEYWORDS_HPP_
