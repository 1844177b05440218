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

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "commchar/error.hpp"
#include "commchar/graph.hpp"

namespace commchar {
namespace {

// Accumulates labelled edges, applying the undirected/simple-graph rules.
class EdgeCollector {
 public:
  explicit EdgeCollector(const LoadOptions& options) : options_(options) {}

  NodeId intern(const std::string& label) {
    auto [it, inserted] = index_.emplace(label, static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.push_back(label);
    return it->second;
  }

  void add(const std::string& a, const std::string& b, std::size_t line) {
    ++report_.edges_read;
    if (a == b) {
      ++report_.self_loops;
      return;
    }
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
    auto [it, inserted] = seen_.emplace(key, u < v);
    if (inserted) {
      edges_.emplace_back(u, v);
      return;
    }
    if (it->second == (u < v)) {
      ++report_.duplicate_edges;
    } else {
      if (options_.strict_undirected) {
        throw ParseError(line, "reversed duplicate of edge " + a + " " + b + " (strict mode)");
      }
      ++report_.reversed_pairs;
    }
  }

  LoadedGraph finish(std::size_t lines) {
    if (edges_.empty()) throw EmptyGraphError();
    report_.lines = lines;
    LoadedGraph out;
    out.graph = Graph::from_edges(std::move(labels_), edges_);
    out.report = report_;
    return out;
  }

 private:
  LoadOptions options_;
  LoadReport report_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::unordered_map<std::uint64_t, bool> seen_;
  std::vector<Edge> edges_;
};

// GML tokens: '[', ']', quoted strings (quotes stripped) and bare words.
class GmlLexer {
 public:
  explicit GmlLexer(std::istream& in) : in_(in) {}

  bool next(std::string& tok, bool& quoted) {
    quoted = false;
    int ch;
    while ((ch = in_.get()) != EOF) {
      if (ch == '\n') {
        ++line_;
      } else if (ch == '#') {
        while ((ch = in_.get()) != EOF && ch != '\n') {
        }
        ++line_;
      } else if (!std::isspace(ch)) {
        break;
      }
    }
    if (ch == EOF) return false;
    tok.clear();
    if (ch == '[' || ch == ']') {
      tok.push_back(static_cast<char>(ch));
      return true;
    }
    if (ch == '"') {
      quoted = true;
      while ((ch = in_.get()) != EOF && ch != '"') {
        if (ch == '\n') ++line_;
        tok.push_back(static_cast<char>(ch));
      }
      if (ch == EOF) throw ParseError(line_, "unterminated string in GML");
      return true;
    }
    tok.push_back(static_cast<char>(ch));
    while ((ch = in_.peek()) != EOF && !std::isspace(ch) && ch != '[' && ch != ']') {
      tok.push_back(static_cast<char>(in_.get()));
    }
    return true;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

using GmlRecord = std::map<std::string, std::string>;

// Reads `[ key value ... ]` after the opening bracket has been consumed.
// Nested lists (e.g. node graphics) are skipped.
GmlRecord read_gml_record(GmlLexer& lex) {
  GmlRecord rec;
  std::string key, value;
  bool quoted = false;
  while (true) {
    if (!lex.next(key, quoted)) throw ParseError(lex.line(), "unexpected end of GML record");
    if (key == "]") return rec;
    if (!lex.next(value, quoted)) throw ParseError(lex.line(), "missing value for GML key " + key);
    if (value == "[") {
      int depth = 1;
      while (depth > 0) {
        if (!lex.next(value, quoted)) throw ParseError(lex.line(), "unbalanced GML brackets");
        if (!quoted && value == "[") ++depth;
        if (!quoted && value == "]") --depth;
      }
      continue;
    }
    rec.emplace(key, value);
  }
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options) {
  EdgeCollector collector(options);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;
    if (a.front() == '#') continue;
    if (!(ss >> b) || (ss >> extra)) {
      throw ParseError(lineno, "expected exactly two endpoint tokens");
    }
    collector.add(a, b, lineno);
  }
  return collector.finish(lineno);
}

LoadedGraph load_gml(std::istream& in, const LoadOptions& options) {
  GmlLexer lex(in);
  std::string tok;
  bool quoted = false;
  // Seek the top-level `graph [`.
  while (lex.next(tok, quoted)) {
    if (!quoted && tok == "graph") break;
  }
  if (tok != "graph" || !lex.next(tok, quoted) || tok != "[") {
    throw ParseError(lex.line(), "no 'graph [' block in GML input");
  }

  std::vector<GmlRecord> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::size_t> edge_lines;
  while (true) {
    if (!lex.next(tok, quoted)) throw ParseError(lex.line(), "unterminated graph block");
    if (!quoted && tok == "]") break;
    std::string key = tok;
    if (!lex.next(tok, quoted)) throw ParseError(lex.line(), "missing value for GML key " + key);
    if (tok != "[" || quoted) continue;  // graph-level scalar attribute
    const std::size_t at = lex.line();
    GmlRecord rec = read_gml_record(lex);
    if (key == "node") {
      if (!rec.contains("id")) throw ParseError(at, "GML node without id");
      nodes.push_back(std::move(rec));
    } else if (key == "edge") {
      if (!rec.contains("source") || !rec.contains("target")) {
        throw ParseError(at, "GML edge without source/target");
      }
      edges.emplace_back(rec["source"], rec["target"]);
      edge_lines.push_back(at);
    }
  }

  std::unordered_map<std::string, std::string> label_of_id;
  for (const auto& rec : nodes) {
    auto it = rec.find("label");
    label_of_id[rec.at("id")] = it != rec.end() ? it->second : rec.at("id");
  }

  EdgeCollector collector(options);
  // Register declared nodes first so indices follow file order and isolated
  // nodes are kept.
  for (const auto& rec : nodes) collector.intern(label_of_id[rec.at("id")]);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto su = label_of_id.find(edges[i].first);
    auto sv = label_of_id.find(edges[i].second);
    if (su == label_of_id.end() || sv == label_of_id.end()) {
      throw ParseError(edge_lines[i], "GML edge references undeclared node id");
    }
    collector.add(su->second, sv->second, edge_lines[i]);
  }
  LoadedGraph out = collector.finish(lex.line());
  out.node_attributes.resize(out.graph.node_count());
  for (const auto& rec : nodes) {
    const NodeId v = *out.graph.find(label_of_id[rec.at("id")]);
    out.node_attributes[v] = rec;
  }
  return out;
}

LoadedGraph load_graph_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path.string() + "'");
  try {
    if (path.extension() == ".gml") return load_gml(in, options);
    return load_edge_list(in, options);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace commchar
