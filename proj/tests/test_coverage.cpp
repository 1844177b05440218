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


#include <set>
#include <vector>

#include "commchar/coverage.hpp"
#include "commchar/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using commchar::CoverFamily;

namespace {

std::vector<std::vector<std::uint32_t>> random_sets(commchar::Rng& rng, std::size_t universe,
                                                    std::size_t count) {
  std::vector<std::vector<std::uint32_t>> sets(count);
  const double density = 0.05 + 0.4 * commchar::uniform_unit(rng);
  for (auto& s : sets)
    for (std::uint32_t e = 0; e < universe; ++e)
      if (commchar::uniform_unit(rng) < density) s.push_back(e);
  return sets;
}

std::size_t brute_union(const std::vector<std::vector<std::uint32_t>>& sets,
                        const std::vector<fixtures::NodeId>& pick) {
  std::set<std::uint32_t> u;
  for (auto i : pick) u.insert(sets[i].begin(), sets[i].end());
  return u.size();
}

}  // namespace

TEST_CASE("dense and sparse paths agree") {
  commchar::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t universe = 1 + commchar::uniform_below(rng, 150);
    const std::size_t count = 1 + commchar::uniform_below(rng, 12);
    auto sets = random_sets(rng, universe, count);
    CoverFamily dense(universe, sets);
    CoverFamily sparse(universe, sets, 0);
    REQUIRE(dense.dense());
    REQUIRE_FALSE(sparse.dense());

    const std::size_t k = commchar::uniform_below(rng, count + 1);
    auto a = dense.greedy(k), b = sparse.greedy(k);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].set == b[i].set);
      CHECK(a[i].gain == b[i].gain);
      CHECK(a[i].covered == b[i].covered);
    }
    auto ea = dense.enumerate_unions(k), eb = sparse.enumerate_unions(k);
    CHECK(ea.subsets == eb.subsets);
    CHECK(ea.covered == eb.covered);
  }
}

TEST_CASE("enumeration sums match brute force") {
  commchar::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t universe = 1 + commchar::uniform_below(rng, 60);
    const std::size_t count = 1 + commchar::uniform_below(rng, 9);
    auto sets = random_sets(rng, universe, count);
    const std::size_t k = commchar::uniform_below(rng, count + 1);
    std::uint64_t subsets = 0, covered = 0;
    fixtures::for_each_subset(count, k, [&](const auto& pick) {
      ++subsets;
      covered += brute_union(sets, pick);
    });
    for (std::size_t budget : {CoverFamily::kDefaultDenseBudget, std::size_t{0}}) {
      CoverFamily f(universe, sets, budget);
      auto e = f.enumerate_unions(k);
      CHECK(e.subsets == subsets);
      CHECK(static_cast<std::uint64_t>(e.covered) == covered);
    }
  }
}

TEST_CASE("union_size matches brute force") {
  commchar::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const std::size_t universe = 1 + commchar::uniform_below(rng, 200);
    const std::size_t count = 2 + commchar::uniform_below(rng, 10);
    auto sets = random_sets(rng, universe, count);
    std::vector<fixtures::NodeId> pick;
    for (fixtures::NodeId i = 0; i < count; ++i)
      if (commchar::uniform_below(rng, 2)) pick.push_back(i);
    for (std::size_t budget : {CoverFamily::kDefaultDenseBudget, std::size_t{0}}) {
      CoverFamily f(universe, sets, budget);
      auto scratch = f.make_scratch();
      std::vector<std::uint32_t> chosen(pick.begin(), pick.end());
      CHECK(f.union_size(chosen, scratch) == brute_union(sets, pick));
      CHECK(f.union_size(chosen, scratch) == brute_union(sets, pick));  // scratch reuse
    }
  }
}

TEST_CASE("greedy stops at target ratio and breaks ties low") {
  std::vector<std::vector<std::uint32_t>> sets{{0, 1}, {2, 3}, {0, 1, 2, 3}, {4}};
  CoverFamily f(5, sets);
  auto steps = f.greedy(10, 0.8);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].set == 2);
  CHECK(f.greedy(10, 0.0).empty());
  auto two = f.greedy(2);
  CHECK(two[1].set == 3);
  // Once everything is covered the remaining picks have zero gain, lowest first.
  auto all = f.greedy(4);
  REQUIRE(all.size() == 4);
  CHECK(all[2].set == 0);
  CHECK(all[2].gain == 0);
}
