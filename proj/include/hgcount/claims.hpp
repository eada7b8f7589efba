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

#ifndef HGCOUNT_CLAIMS_HPP
#define HGCOUNT_CLAIMS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hgcount/hypergraph.hpp"
#include "hgcount/oracle.hpp"

namespace hgcount {

/// Outcome of one Monte Carlo or exhaustive check.
struct ClaimResult {
  std::string name;
  /// False when the instance cannot satisfy the check's hypothesis.
  bool applicable = true;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  /// Standard error used for the 3-sigma tolerance (0 for exact checks).
  double sigma = 0.0;
  std::uint64_t trials = 0;
  std::string detail;
};

struct BucketChainReport {
  bool first_level_holds = false;
  /// Prefixes (q_1, a_1), ..., (q_{i-1}, a_{i-1}) examined at levels i >= 2.
  std::uint64_t prefixes_checked = 0;
  std::uint64_t counterexamples = 0;
  /// Prefix chain plus the witnessing bucket for the first prefix found
  /// lacking one, if any.
  std::vector<ChainStep> first_counterexample;
  /// One full chain q_1..q_{d-1} satisfying every level, when one exists.
  std::vector<ChainStep> witness;
};

/// Exhaustively checks both bucket inequalities over every prefix whose
/// vertices have positive continuation count. Vacuous for m = 0.
BucketChainReport bucket_chain_search(const Hypergraph& h);

/// R_hat = smallest power of two >= 20 d^{2d-3} 4^d m_o log^{2d-3} n;
/// passes when acceptance <= 1/(20 2^d) + 3 sigma.
ClaimResult check_upper_acceptance(std::shared_ptr<const Hypergraph> h, const SimulationConfig& sim, int trials,
                          std::uint64_t seed);

/// R_hat = largest power of two <= m_o / (4 d log n); passes when acceptance
/// >= 1/2^d - 3 sigma. Fails (with a note) if m_o is too small for any R_hat >= 1.
ClaimResult check_lower_acceptance(std::shared_ptr<const Hypergraph> h, const SimulationConfig& sim, int trials,
                          std::uint64_t seed);

/// Random negative CID1 and CID2 queries must never answer true.
ClaimResult check_simulation_soundness(std::shared_ptr<const Hypergraph> h, int trials, std::uint64_t seed);

ClaimResult check_bucket_claim(const Hypergraph& h);

/// Mean of k * R_d over `trials` colorings of U^{[d]} within 3 sigma of m_o.
ClaimResult check_sparsify_unbiased(const Hypergraph& h, int k, int trials, std::uint64_t seed);

}  // namespace hgcount

#endif  // HGCOUNT_CLAIMS_HPP
