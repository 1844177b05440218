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

// AVX2 variants. This translation unit is compiled with -mavx2 and must only
// be entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>
#include <span>

#include "commchar/kernels.hpp"

namespace commchar::kernels::avx2 {
namespace {

// Nibble lookup popcount over one 256-bit lane, summed into four u64 lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(
      0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
      0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                         _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i acc) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
}

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

std::uint64_t popcount(std::span<const std::uint64_t> words) {
  const std::size_t n = words.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcount_lanes(load(&words[i])));
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(words[i]));
  return total;
}

std::uint64_t and_not_popcount(std::span<const std::uint64_t> a,
                               std::span<const std::uint64_t> b) {
  const std::size_t n = a.size();
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_andnot_si256(load(&b[i]), load(&a[i]));
    acc = _mm256_add_epi64(acc, popcount_lanes(v));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & ~b[i]));
  return total;
}

void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_or_si256(load(&dst[i]), load(&src[i]));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(&dst[i]), v);
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

// Block-wise all-pairs comparison of 8x8 elements: each block of `a` is
// compared against all eight rotations of the current block of `b`, and the
// block with the smaller maximum advances. Inputs must be strictly increasing.
std::uint64_t intersect_count(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
  std::uint64_t count = 0;
  std::size_t i = 0, j = 0;
  const __m256i rotate = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 0);
  while (i + 8 <= a.size() && j + 8 <= b.size()) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&a[i]));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&b[j]));
    __m256i hits = _mm256_cmpeq_epi32(va, vb);
    for (int r = 0; r < 7; ++r) {
      vb = _mm256_permutevar8x32_epi32(vb, rotate);
      hits = _mm256_or_si256(hits, _mm256_cmpeq_epi32(va, vb));
    }
    count += static_cast<std::uint64_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(hits)))));
    const std::uint32_t amax = a[i + 7];
    const std::uint32_t bmax = b[j + 7];
    if (amax <= bmax) i += 8;
    if (bmax <= amax) j += 8;
  }
  return count + scalar::intersect_count(a.subspan(i), b.subspan(j));
}

}  // namespace commchar::kernels::avx2
