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

#ifndef HGCOUNT_RNG_HPP
#define HGCOUNT_RNG_HPP

#include <cstdint>
#include <random>
#include <span>

#include "hgcount/vertex_set.hpp"

namespace hgcount {

using Rng = std::mt19937_64;

/// Stream tags. Every randomized step draws from derive(seed, tag, index) so
/// a run replays bit-identically from its master seed.
enum class StreamTag : std::uint64_t {
  kGenerator = 1,
  kCid1Partition = 2,
  kVerify = 3,
  kRough = 4,
  kColoring = 5,
  kHash = 6,
  kImportance = 7,
  kPipeline = 8,
  kTrial = 9,
  kClaims = 10,
};

/// SplitMix64 finalizer applied to a combination of the three words.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t z = seed;
  for (std::uint64_t word : {tag, index}) {
    z += 0x9E3779B97F4A7C15ULL + word * 0xD1B54A32D192ED03ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
  }
  return z;
}

inline Rng make_rng(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
  return Rng(derive(seed, static_cast<std::uint64_t>(tag), index));
}

/// Keeps each of `members` independently with probability p.
VertexSet sample_subset(std::span<const Vertex> members, std::size_t universe, double p, Rng& rng);
VertexSet sample_subset(const VertexSet& from, double p, Rng& rng);

}  // namespace hgcount

#endif  // HGCOUNT_RNG_HPP
