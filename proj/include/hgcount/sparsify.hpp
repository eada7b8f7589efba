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

#ifndef HGCOUNT_SPARSIFY_HPP
#define HGCOUNT_SPARSIFY_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hgcount/hypergraph.hpp"
#include "hgcount/rng.hpp"

namespace hgcount {

inline constexpr std::size_t kMaxHashEntries = 4096;

/// A vertex coloring chi plus the table h_d : [k]^d -> {0,1}. Color vectors
/// index the table in base k with position 0 as the most significant digit.
struct ColoringScheme {
  int k = 1;
  int d = 2;
  std::vector<std::uint8_t> colors;  // per vertex of the universe
  std::vector<std::uint8_t> table;   // k^d entries

  bool hash(std::span<const int> color_vector) const;
};

/// k^d independent Bernoulli(1/k) entries. Throws InputError if k < 1 or the
/// table would exceed kMaxHashEntries.
std::vector<std::uint8_t> build_hash(int k, int d, Rng& rng);

struct WeightedTuple {
  PartedTuple tuple;
  double weight = 1.0;
  /// Number of sparsification rounds this tuple has been through.
  int sparsify_rounds = 0;
  /// Product of importance-sampling rescale factors applied so far.
  double rescale = 1.0;
};

struct CoarseTag {
  double estimate = 1.0;  // e_i >= 1
  double alpha = 1.0;     // claimed band factor
};

/// Colors the tuple's support with k colors, draws h_d and emits, for every
/// color vector c with h_d(c) = 1, the tuple whose i-th position is the
/// color-c_i class of the i-th position, with weight k * w. Children whose
/// ordered count is trivially zero (an empty class, or fewer members than
/// repeated positions) are dropped. If `scheme` is non-null it receives the
/// coloring and table used.
std::vector<WeightedTuple> sparsify(const WeightedTuple& t, int k, Rng& rng, ColoringScheme* scheme = nullptr);

struct ImportanceConfig {
  double lambda = 0.1;
  double delta = 0.01;
  double alpha = 1.0;
  /// Leading constant of the per-bucket sample size.
  double c = 1.0;
  /// Caps the total output; 0 disables the cap.
  std::size_t max_output = 0;
};

struct ImportanceChoice {
  std::size_t index = 0;
  double factor = 1.0;
};

/// Per-bucket quota ceil(c * lambda^-2 * alpha^2 * ln(buckets / delta)),
/// lowered to floor(max_output / buckets) (at least 1) when a cap is set.
std::size_t importance_quota(const ImportanceConfig& cfg, std::size_t buckets);

/// Buckets items by floor(log2(weight * estimate)) and keeps a uniform
/// sample of at most the quota per bucket; kept items are scaled by
/// bucket size / kept. Returns choices in ascending index order.
std::vector<ImportanceChoice> importance_sample_indices(std::span<const double> weights,
                                                        std::span<const double> estimates,
                                                        const ImportanceConfig& cfg, Rng& rng);

std::vector<WeightedTuple> importance_sample(std::span<const WeightedTuple> tuples, std::span<const CoarseTag> tags,
                                             const ImportanceConfig& cfg, Rng& rng);

}  // namespace hgcount

#endif  // HGCOUNT_SPARSIFY_HPP
