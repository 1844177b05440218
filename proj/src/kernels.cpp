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

#include <atomic>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "commchar/error.hpp"
#include "commchar/kernels.hpp"

namespace commchar::kernels {
namespace {

Backend detect() {
#if COMMCHAR_HAVE_AVX2
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Backend::kAvx2;
#endif
  return Backend::kScalar;
}

std::atomic<Backend>& selected() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend b) {
  if (b == Backend::kScalar) return true;
#if COMMCHAR_HAVE_AVX2
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return selected().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw ConfigError("kernel backend '" + std::string(backend_name(b)) +
                      "' is not supported on this CPU");
  }
  selected().store(b, std::memory_order_relaxed);
}

void reset_backend() { selected().store(detect(), std::memory_order_relaxed); }

#if COMMCHAR_HAVE_AVX2
#define COMMCHAR_DISPATCH(fn, ...)                                    \
  (active_backend() == Backend::kAvx2 ? avx2::fn(__VA_ARGS__) \
                                      : scalar::fn(__VA_ARGS__))
#else
#define COMMCHAR_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

std::uint64_t popcount(std::span<const std::uint64_t> words) {
  return COMMCHAR_DISPATCH(popcount, words);
}

std::uint64_t and_not_popcount(std::span<const std::uint64_t> a,
                               std::span<const std::uint64_t> b) {
  return COMMCHAR_DISPATCH(and_not_popcount, a, b);
}

void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) {
  COMMCHAR_DISPATCH(or_into, dst, src);
}

std::uint64_t intersect_count(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
  return COMMCHAR_DISPATCH(intersect_count, a, b);
}

#undef COMMCHAR_DISPATCH

#if !COMMCHAR_HAVE_AVX2
// Non-x86 builds: the avx2 namespace forwards to the scalar reference so the
// equivalence tests still link. backend_supported() reports false for it.
namespace avx2 {
std::uint64_t popcount(std::span<const std::uint64_t> w) { return scalar::popcount(w); }
std::uint64_t and_not_popcount(std::span<const std::uint64_t> a,
                               std::span<const std::uint64_t> b) {
  return scalar::and_not_popcount(a, b);
}
void or_into(std::span<std::uint64_t> d, std::span<const std::uint64_t> s) {
  scalar::or_into(d, s);
}
std::uint64_t intersect_count(std::span<const std::uint32_t> a,
                              std::span<const std::uint32_t> b) {
  return scalar::intersect_count(a, b);
}
}  // namespace avx2
#endif

}  // namespace commchar::kernels
