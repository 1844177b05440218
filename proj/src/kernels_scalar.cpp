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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

#include "commchar/kernels.hpp"

namespace commchar::kernels::scalar {

std::uint64_t popcount(std::span<const std::uint64_t> words) {
  std::uint64_t total = 0;
  for (std::uint64_t w : words) total += std::popcount(w);
  return total;
}

std::uint64_t and_not_popcount(std::span<const std::uint64_t> a,
                               std::span<const std::uint64_t> b) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::popcount(a[i] & ~b[i]);
  return total;
}

void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

std::uint64_t intersect_count(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
  std::uint64_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace commchar::kernels::scalar
