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

#include "commchar/coverage.hpp"

#include <algorithm>
#include <stdexcept>

#include "commchar/kernels.hpp"

namespace commchar {

CoverFamily::CoverFamily(std::size_t universe_size, std::vector<std::vector<std::uint32_t>> sets,
                         std::size_t dense_budget_bytes)
    : universe_(universe_size) {
  offsets_.reserve(sets.size() + 1);
  for (const auto& s : sets) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= universe_ || (i > 0 && s[i] <= s[i - 1])) {
        throw std::invalid_argument("cover set elements must be sorted, unique and in range");
      }
    }
    elements_.insert(elements_.end(), s.begin(), s.end());
    offsets_.push_back(elements_.size());
  }

  words_ = (universe_ + 63) / 64;
  const std::size_t bytes = set_count() * words_ * sizeof(std::uint64_t);
  dense_ = bytes <= dense_budget_bytes;
  if (dense_) {
    bits_.assign(set_count() * words_, 0);
    for (std::size_t i = 0; i < set_count(); ++i) {
      for (std::uint32_t e : set(i)) bits_[i * words_ + e / 64] |= std::uint64_t{1} << (e % 64);
    }
  }
}

CoverFamily CoverFamily::internal(const CommunityIndex& idx, std::size_t dense_budget_bytes) {
  std::vector<std::vector<std::uint32_t>> sets(idx.size());
  for (std::uint32_t i = 0; i < idx.size(); ++i) {
    const auto nbrs = idx.internal_neighbors(i);
    auto& s = sets[i];
    s.reserve(nbrs.size() + 1);
    auto split = std::lower_bound(nbrs.begin(), nbrs.end(), i);
    s.insert(s.end(), nbrs.begin(), split);
    s.push_back(i);
    s.insert(s.end(), split, nbrs.end());
  }
  return CoverFamily(idx.size(), std::move(sets), dense_budget_bytes);
}

CoverFamily CoverFamily::external(const CommunityIndex& idx, std::size_t dense_budget_bytes) {
  std::vector<std::vector<std::uint32_t>> sets(idx.size());
  for (std::uint32_t i = 0; i < idx.size(); ++i) {
    const auto ext = idx.external_neighbors(i);
    sets[i].assign(ext.begin(), ext.end());
  }
  return CoverFamily(idx.boundary().size(), std::move(sets), dense_budget_bytes);
}

CoverFamily::Scratch CoverFamily::make_scratch() const {
  Scratch s;
  if (dense_) {
    s.words.assign(words_, 0);
  } else {
    s.stamp.assign(universe_, 0);
  }
  return s;
}

std::uint64_t CoverFamily::union_size(std::span<const std::uint32_t> chosen, Scratch& scratch) const {
  return dense_ ? dense_union(chosen, scratch) : sparse_union(chosen, scratch);
}

std::uint64_t CoverFamily::dense_union(std::span<const std::uint32_t> chosen, Scratch& scratch) const {
  scratch.words.assign(words_, 0);
  for (std::uint32_t i : chosen) kernels::or_into(scratch.words, row(i));
  return kernels::popcount(scratch.words);
}

std::uint64_t CoverFamily::sparse_union(std::span<const std::uint32_t> chosen, Scratch& scratch) const {
  if (scratch.stamp.size() != universe_) scratch.stamp.assign(universe_, 0);
  if (++scratch.epoch == 0) {
    std::fill(scratch.stamp.begin(), scratch.stamp.end(), 0);
    scratch.epoch = 1;
  }
  std::uint64_t covered = 0;
  for (std::uint32_t i : chosen) {
    for (std::uint32_t e : set(i)) {
      if (scratch.stamp[e] != scratch.epoch) {
        scratch.stamp[e] = scratch.epoch;
        ++covered;
      }
    }
  }
  return covered;
}

CoverFamily::EnumerationTotal CoverFamily::enumerate_unions(std::size_t k) const {
  EnumerationTotal total;
  const std::size_t n = set_count();
  if (k > n) return total;
  if (k == 0) {
    total.subsets = 1;
    return total;
  }
  std::vector<std::uint32_t> pick(k);
  for (std::uint32_t j = 0; j < k; ++j) pick[j] = j;

  // Dense: level j holds the union of the first j+1 picks. Sparse: element
  // multiplicities plus a running covered count.
  std::vector<std::uint64_t> levels(dense_ ? k * words_ : 0, 0);
  std::vector<std::uint32_t> multiplicity(dense_ ? 0 : universe_, 0);
  std::uint64_t covered = 0;
  auto level = [&](std::size_t j) {
    return std::span<std::uint64_t>(levels.data() + j * words_, words_);
  };
  auto push = [&](std::size_t j) {
    if (dense_) {
      auto dst = level(j);
      if (j == 0) {
        std::fill(dst.begin(), dst.end(), 0);
      } else {
        const auto prev = level(j - 1);
        std::copy(prev.begin(), prev.end(), dst.begin());
      }
      kernels::or_into(dst, row(pick[j]));
    } else {
      for (std::uint32_t e : set(pick[j])) {
        if (multiplicity[e]++ == 0) ++covered;
      }
    }
  };
  auto pop = [&](std::size_t j) {
    if (!dense_) {
      for (std::uint32_t e : set(pick[j])) {
        if (--multiplicity[e] == 0) --covered;
      }
    }
  };

  for (std::size_t j = 0; j < k; ++j) push(j);
  while (true) {
    ++total.subsets;
    total.covered += dense_ ? kernels::popcount(level(k - 1)) : covered;
    // Advance to the next combination.
    std::size_t j = k;
    while (j > 0 && pick[j - 1] == n - k + (j - 1)) --j;
    if (j == 0) break;
    for (std::size_t t = k; t-- > j - 1;) pop(t);
    ++pick[j - 1];
    for (std::size_t t = j; t < k; ++t) pick[t] = pick[t - 1] + 1;
    for (std::size_t t = j - 1; t < k; ++t) push(t);
  }
  return total;
}

namespace {

bool reached(std::uint64_t covered, std::size_t universe, double target_ratio) {
  return universe > 0 && static_cast<double>(covered) / static_cast<double>(universe) >= target_ratio;
}

}  // namespace

std::vector<CoverFamily::Step> CoverFamily::greedy(std::size_t max_sets, double target_ratio) const {
  max_sets = std::min(max_sets, set_count());
  return dense_ ? dense_greedy(max_sets, target_ratio) : sparse_greedy(max_sets, target_ratio);
}

std::vector<CoverFamily::Step> CoverFamily::dense_greedy(std::size_t max_sets, double target_ratio) const {
  std::vector<Step> steps;
  std::vector<std::uint64_t> covered_bits(words_, 0);
  std::vector<bool> chosen(set_count(), false);
  std::uint64_t covered = 0;
  while (steps.size() < max_sets && !reached(covered, universe_, target_ratio)) {
    std::uint32_t best = 0;
    std::uint64_t best_gain = 0;
    bool found = false;
    for (std::uint32_t i = 0; i < set_count(); ++i) {
      if (chosen[i]) continue;
      const std::uint64_t gain = kernels::and_not_popcount(row(i), covered_bits);
      if (!found || gain > best_gain) {
        best = i;
        best_gain = gain;
        found = true;
      }
    }
    chosen[best] = true;
    kernels::or_into(covered_bits, row(best));
    covered += best_gain;
    steps.push_back({best, best_gain, covered});
  }
  return steps;
}

std::vector<CoverFamily::Step> CoverFamily::sparse_greedy(std::size_t max_sets, double target_ratio) const {
  // Inverse index: element -> sets containing it.
  std::vector<std::size_t> inv_offsets(universe_ + 1, 0);
  for (std::uint32_t e : elements_) ++inv_offsets[e + 1];
  for (std::size_t e = 0; e < universe_; ++e) inv_offsets[e + 1] += inv_offsets[e];
  std::vector<std::uint32_t> inv(elements_.size());
  {
    std::vector<std::size_t> cursor(inv_offsets.begin(), inv_offsets.end() - 1);
    for (std::uint32_t i = 0; i < set_count(); ++i) {
      for (std::uint32_t e : set(i)) inv[cursor[e]++] = i;
    }
  }

  std::vector<std::uint64_t> gain(set_count());
  for (std::uint32_t i = 0; i < set_count(); ++i) gain[i] = set(i).size();
  std::vector<bool> chosen(set_count(), false);
  std::vector<bool> is_covered(universe_, false);
  std::vector<Step> steps;
  std::uint64_t covered = 0;
  while (steps.size() < max_sets && !reached(covered, universe_, target_ratio)) {
    std::uint32_t best = 0;
    bool found = false;
    for (std::uint32_t i = 0; i < set_count(); ++i) {
      if (chosen[i]) continue;
      if (!found || gain[i] > gain[best]) {
        best = i;
        found = true;
      }
    }
    chosen[best] = true;
    const std::uint64_t g = gain[best];
    for (std::uint32_t e : set(best)) {
      if (is_covered[e]) continue;
      is_covered[e] = true;
      for (std::size_t k = inv_offsets[e]; k < inv_offsets[e + 1]; ++k) --gain[inv[k]];
    }
    covered += g;
    steps.push_back({best, g, covered});
  }
  return steps;
}

}  // namespace commchar
