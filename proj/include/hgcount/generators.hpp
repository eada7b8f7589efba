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

#ifndef HGCOUNT_GENERATORS_HPP
#define HGCOUNT_GENERATORS_HPP

#include <cstddef>
#include <cstdint>

#include "hgcount/hypergraph.hpp"

namespace hgcount {

/// m distinct edges drawn uniformly from all C(n, d) candidates.
/// Throws InputError when m > C(n, d).
Hypergraph generate_random(std::size_t n, int d, std::size_t m, std::uint64_t seed);

/// Edges whose vertices are drawn with Zipf-like weights (v+1)^{-skew}, so a
/// few vertices carry most of the degree. skew = 0 reduces to uniform
/// sampling. If the weighted draw stalls on duplicates the remainder is filled
/// uniformly.
Hypergraph generate_skewed(std::size_t n, int d, std::size_t m, double skew, std::uint64_t seed);

/// Every d-subset of [0, n).
Hypergraph complete(std::size_t n, int d);

/// m random edges that all contain vertex 0.
Hypergraph star(std::size_t n, int d, std::size_t m, std::uint64_t seed);

}  // namespace hgcount

#endif  // HGCOUNT_GENERATORS_HPP
