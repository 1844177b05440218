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

#ifndef COMMCHAR_DOMSETS_HPP_
#define COMMCHAR_DOMSETS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "commchar/graph.hpp"

namespace commchar {

enum class DomMode { kInternal, kExternal };

std::string to_string(DomMode mode);

// Stopping rule for the greedy dominating-set search: a fixed set size k, or
// the smallest greedy prefix whose ratio reaches p.
class Criterion {
 public:
  enum class Kind { kCount, kRatio };

  static Criterion count(std::size_t k);
  static Criterion ratio(double p);

  Kind kind() const { return kind_; }
  std::size_t k() const { return k_; }
  double p() const { return p_; }

  // "k=5" or "p=0.8".
  std::string to_string() const;

 private:
  Criterion(Kind kind, std::size_t k, double p) : kind_(kind), k_(k), p_(p) {}
  Kind kind_;
  std::size_t k_;
  double p_;
};

struct GreedyStep {
  NodeId node;
  std::uint64_t gain;  // newly covered elements
  double ratio;        // ratio after the step
};

struct DomSetResult {
  DomMode mode;
  Criterion criterion;
  std::vector<NodeId> set;  // sorted
  std::vector<GreedyStep> steps;  // in pick order
  // Absent for external mode on a closed community.
  std::optional<double> achieved_ratio;

  bool closed() const { return !achieved_ratio.has_value(); }
};

// Internal dominating ratio |S ∪ N(S,C)| / |C|.
double idr(const Graph& g, std::span<const NodeId> subset, const Community& c);

// External dominating ratio |N(S,C̄)| / |N(C,C̄)|; nullopt when the community
// has no external neighbors.
std::optional<double> edr(const Graph& g, std::span<const NodeId> subset, const Community& c);

DomSetResult greedy_ids(const Graph& g, const Community& c, const Criterion& criterion);
DomSetResult greedy_eds(const Graph& g, const Community& c, const Criterion& criterion);

// Same, reusing a prebuilt index of the community.
DomSetResult greedy_ids(const CommunityIndex& idx, const Criterion& criterion);
DomSetResult greedy_eds(const CommunityIndex& idx, const Criterion& criterion);

}  // namespace commchar

#endif  // COMMCHAR_DOMSETS_HPP_
