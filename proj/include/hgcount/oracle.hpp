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

#ifndef HGCOUNT_ORACLE_HPP
#define HGCOUNT_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>

#include "hgcount/hypergraph.hpp"
#include "hgcount/rng.hpp"

namespace hgcount {

/// Query counters by oracle flavor. Every call is counted at its own level
/// and at every level it expands into, so a simulated CID2 call bumps `cid2`
/// once, `cid1` once per pattern it tries and `cid` once per partition round.
/// `exact_answers` counts calls answered from ground truth instead of being
/// simulated; each costs one CID-equivalent.
struct QueryLedger {
  std::uint64_t cid = 0;
  std::uint64_t cid1 = 0;
  std::uint64_t cid2 = 0;
  std::uint64_t cid2o = 0;
  std::uint64_t exact_answers = 0;

  std::uint64_t cid_equivalent() const { return cid + exact_answers; }

  QueryLedger& operator+=(const QueryLedger& o);
  QueryLedger& operator-=(const QueryLedger& o);
  friend QueryLedger operator+(QueryLedger a, const QueryLedger& b) { return a += b; }
  /// Snapshot difference; `a` must dominate `b` counter by counter.
  friend QueryLedger operator-(QueryLedger a, const QueryLedger& b) { return a -= b; }
  bool operator==(const QueryLedger&) const = default;
};

enum class Cid2oRoute {
  /// Ask CID2 on the same sets (the textbook delegation).
  kDelegated,
  /// Answer count_ordered != 0 directly.
  kGroundTruth,
};

struct SimulationConfig {
  /// Random-partition rounds per CID1 call; 0 selects default_repetitions.
  int cid1_repetitions = 0;
  bool exact_cid1 = false;
  /// Routes CID2 to count_meeting != 0, the literal overlapping definition.
  bool exact_cid2 = false;
  Cid2oRoute cid2o_route = Cid2oRoute::kDelegated;

  /// ceil(d^d (d+2) ln n): false-negative rate at most n^-(d+2) per call.
  static int default_repetitions(int d, std::size_t n);
};

/// The only access path estimators have to a hypergraph. Exposes n and d and
/// the four decision oracles; the edge set itself stays hidden.
class OracleHandle {
 public:
  OracleHandle(std::shared_ptr<const Hypergraph> h, SimulationConfig config = {}, std::uint64_t seed = 0);

  int arity() const { return h_->arity(); }
  std::size_t vertex_count() const { return h_->vertex_count(); }
  const SimulationConfig& config() const { return config_; }
  int repetitions() const { return repetitions_; }

  /// Some edge has exactly one vertex in each set. Sets must be pairwise
  /// disjoint; a rejected query costs nothing.
  bool cid(std::span<const VertexSet> sets);
  /// Some ordered edge has its positions in the parted tuple's positions.
  bool cid1(const PartedTuple& t);
  /// Arbitrary overlap allowed.
  bool cid2(std::span<const VertexSet> sets);
  /// Ordered question m_o(A_1..A_d) != 0.
  bool cid2o(std::span<const VertexSet> sets);

  QueryLedger snapshot() const { return ledger_; }
  void reset() { ledger_ = {}; }

 private:
  void check_arity(std::span<const VertexSet> sets) const;
  bool raw_cid(std::span<const VertexSet> sets);
  bool simulate_cid1(const PartedTuple& t);
  bool simulate_cid2(std::span<const VertexSet> sets);

  std::shared_ptr<const Hypergraph> h_;
  SimulationConfig config_;
  int repetitions_;
  Rng rng_;
  QueryLedger ledger_;
};

}  // namespace hgcount

#endif  // HGCOUNT_ORACLE_HPP
