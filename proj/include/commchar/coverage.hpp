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

#ifndef COMMCHAR_COVERAGE_HPP_
#define COMMCHAR_COVERAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "commchar/graph.hpp"

namespace commchar {

// A family of sets over the universe [0, universe_size()). Both dominating
// ratios reduce to coverage: IDR covers community members with closed
// internal neighborhoods, EDR covers the boundary N(C, C̄) with external
// neighborhoods.
//
// When the family fits in `dense_budget_bytes` as bitsets, unions and greedy
// gains run on the word kernels; otherwise a sparse path with multiplicity
// counters is used. Both paths return identical results.
class CoverFamily {
 public:
  static constexpr std::size_t kDefaultDenseBudget = std::size_t{64} << 20;

  // Each set must be sorted and unique with elements < universe_size.
  CoverFamily(std::size_t universe_size, std::vector<std::vector<std::uint32_t>> sets,
              std::size_t dense_budget_bytes = kDefaultDenseBudget);

  // Set i = closed internal neighborhood of local member i.
  static CoverFamily internal(const CommunityIndex& idx,
                              std::size_t dense_budget_bytes = kDefaultDenseBudget);
  // Set i = external neighbors of local member i, over boundary indices.
  static CoverFamily external(const CommunityIndex& idx,
                              std::size_t dense_budget_bytes = kDefaultDenseBudget);

  std::size_t universe_size() const { return universe_; }
  std::size_t set_count() const { return offsets_.size() - 1; }
  bool dense() const { return dense_; }
  std::span<const std::uint32_t> set(std::size_t i) const {
    return {elements_.data() + offsets_[i], elements_.data() + offsets_[i + 1]};
  }

  // Reusable per-thread state for union_size().
  class Scratch {
   public:
    Scratch() = default;

   private:
    friend class CoverFamily;
    std::vector<std::uint64_t> words;
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;
  };
  Scratch make_scratch() const;

  // |∪ set_i| over the chosen (distinct) set indices.
  std::uint64_t union_size(std::span<const std::uint32_t> chosen, Scratch& scratch) const;

  struct EnumerationTotal {
    std::uint64_t subsets = 0;
    unsigned __int128 covered = 0;  // Σ |union| over all subsets
  };

  // Sums union sizes over every size-`k` subset of the family, in
  // lexicographic order. The caller bounds the subset count.
  EnumerationTotal enumerate_unions(std::size_t k) const;

  struct Step {
    std::uint32_t set;
    std::uint64_t gain;
    std::uint64_t covered;  // after this step
  };

  // Greedy maximum coverage: repeatedly picks the unchosen set with the most
  // uncovered elements, ties to the lowest index. Before each pick it stops
  // if `max_sets` sets are chosen or covered/universe >= target_ratio.
  std::vector<Step> greedy(std::size_t max_sets,
                           double target_ratio = std::numeric_limits<double>::infinity()) const;

 private:
  std::uint64_t dense_union(std::span<const std::uint32_t> chosen, Scratch& scratch) const;
  std::uint64_t sparse_union(std::span<const std::uint32_t> chosen, Scratch& scratch) const;
  std::vector<Step> dense_greedy(std::size_t max_sets, double target_ratio) const;
  std::vector<Step> sparse_greedy(std::size_t max_sets, double target_ratio) const;
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }

  std::size_t universe_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> elements_;
  std::size_t words_ = 0;
  bool dense_ = false;
  std::vector<std::uint64_t> bits_;  // set_count() rows of words_ words
};

}  // namespace commchar

#endif  // COMMCHAR_COVERAGE_HPP_
