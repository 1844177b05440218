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

// Data-parallel inner loops shared by the coverage, triangle and sampling
// code. Every kernel has a portable scalar reference implementation and, on
// x86-64, an AVX2 implementation. The variant is chosen once at runtime from
// the CPU feature bits; tests force each backend and compare results.

#ifndef COMMCHAR_KERNELS_HPP_
#define COMMCHAR_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace commchar::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend b);

// True when the running CPU (and this build) can execute `b`.
bool backend_supported(Backend b);

// Backend used by the free functions below.
Backend active_backend();

// Forces a backend, e.g. from tests or `--kernels scalar`. Throws
// ConfigError if the backend is not supported on this machine.
void set_backend(Backend b);

// Restores CPU-feature based selection.
void reset_backend();

// Population count of all words.
std::uint64_t popcount(std::span<const std::uint64_t> words);

// popcount(a & ~b). Sizes must match.
std::uint64_t and_not_popcount(std::span<const std::uint64_t> a,
                               std::span<const std::uint64_t> b);

// dst |= src. Sizes must match.
void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);

// |a ∩ b| for strictly increasing sequences.
std::uint64_t intersect_count(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b);

// Explicit variants, used by the equivalence tests and the dispatcher.
namespace scalar {
std::uint64_t popcount(std::span<const std::uint64_t> words);
std::uint64_t and_not_popcount(std::span<const std::uint64_t> a,
                               std::span<const std::uint64_t> b);
void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
std::uint64_t intersect_count(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b);
}  // namespace scalar

namespace avx2 {
std::uint64_t popcount(std::span<const std::uint64_t> words);
std::uint64_t and_not_popcount(std::span<const std::uint64_t> a,
                               std::span<const std::uint64_t> b);
void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src);
std::uint64_t intersect_count(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b);
}  // namespace avx2

}  // namespace commchar::kernels

#endif  // COMMCHAR_KERNELS_HPP_
