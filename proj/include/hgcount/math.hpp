// Copyright 2026 The hgcount Authors
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

#ifndef HGCOUNT_MATH_HPP
#define HGCOUNT_MATH_HPP

#include <bit>
#include <cstddef>
#include <cstdint>

namespace hgcount {

/// Smallest L with 2^L >= n; every "log n" in the algorithms means this value.
constexpr int ceil_log2(std::uint64_t n) {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1));
}

constexpr std::uint64_t factorial(int d) {
  std::uint64_t f = 1;
  for (int i = 2; i <= d; ++i) {
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

/// Exact for every argument this library uses (n <= 2^16, k <= 6).
constexpr std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

constexpr double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) {
    r *= base;
  }
  return r;
}

}  // namespace hgcount

#endif  // HGCOUNT_MATH_HPP
