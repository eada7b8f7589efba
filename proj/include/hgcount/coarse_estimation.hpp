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

#ifndef HGCOUNT_COARSE_ESTIMATION_HPP
#define HGCOUNT_COARSE_ESTIMATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hgcount/oracle.hpp"
#include "hgcount/rng.hpp"

namespace hgcount {

enum class Preset { kPaper, kDesk };

/// Exponents (j_1, ..., j_{d-1}), each in [0, d * ceil(log2 n)].
using GuessVector = std::vector<int>;

struct VerifyOutcome {
  bool accepted = false;
  std::optional<GuessVector> guess;  // set iff accepted
  std::uint64_t queries = 0;         // CID2o calls issued
};

struct RoughConfig {
  /// Gamma = ceil(gamma_multiplier * ceil(log2 n)) repetitions per rung.
  double gamma_multiplier = 64.0;
  /// A rung is accepted when strictly more than acceptance_fraction * Gamma
  /// runs accept.
  double acceptance_fraction = 0.05;
  /// Top rung is 2^ladder_top_exponent; negative selects d * ceil(log2 n),
  /// i.e. the smallest power of two >= n^d.
  int ladder_top_exponent = -1;
  /// Accepted guess is divided by this; 0 selects d^{d-2} 2^d ceil(log2 n)^{d-2}.
  double output_divisor = 0.0;
  Preset preset = Preset::kDesk;

  /// Gamma multiplier d * 4^d * 2000.
  static RoughConfig paper(int d);
  /// Gamma multiplier 64.
  static RoughConfig desk(int d);

  int gamma(std::size_t n) const;
  int top_exponent(int d, std::size_t n) const;
  double divisor(int d, std::size_t n) const;
};

/// One Verify-Estimate run for guess r_hat. `universe` holds the d position
/// sets U_1..U_d that B_1..B_d are sampled from (all of [0, n) for the whole
/// hypergraph).
VerifyOutcome verify_estimate(OracleHandle& o, double r_hat, Rng& rng, std::span<const VertexSet> universe);
VerifyOutcome verify_estimate(OracleHandle& o, double r_hat, Rng& rng);

struct RoughResult {
  bool found = false;
  double m_hat_o = 0.0;       // valid iff found
  double r_hat = 0.0;         // accepted guess
  int accepted_exponent = -1;  // log2 of r_hat
  int acceptances = 0;         // on the accepted rung
  int gamma = 0;
  int rungs_tried = 0;
  QueryLedger queries;
};

/// Walks R = 2^top, 2^{top-1}, ..., 1 and returns the first rung accepted by
/// more than the configured fraction of Gamma Verify-Estimate runs.
RoughResult rough_estimation(OracleHandle& o, const RoughConfig& cfg, Rng& rng);

/// Same, restricted to the ordered hyperedges of a parted tuple. The ladder
/// starts at the smallest power of two >= the tuple's position volume.
RoughResult rough_estimation(OracleHandle& o, const RoughConfig& cfg, const PartedTuple& t, Rng& rng);

struct UnorderedRough {
  double m_hat = 0.0;
  RoughResult ordered;
  /// True when the ladder found nothing and an exact check confirmed m = 0.
  bool confirmed_empty = false;
};

/// Unordered estimate m_hat_o / d!. When the ladder is exhausted an exact
/// count at tau = 0 decides between 0 and a floor of one edge.
UnorderedRough rough_estimation_unordered(OracleHandle& o, const RoughConfig& cfg, Rng& rng);

}  // namespace hgcount

#endif  // HGCOUNT_COARSE_ESTIMATION_HPP
