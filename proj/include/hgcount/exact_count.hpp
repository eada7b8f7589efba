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

#ifndef HGCOUNT_EXACT_COUNT_HPP
#define HGCOUNT_EXACT_COUNT_HPP

#include <cstdint>

#include "hgcount/oracle.hpp"

namespace hgcount {

struct ExactResult {
  enum class Verdict { kAtMost, kExceeds };

  Verdict verdict = Verdict::kAtMost;
  /// Exact m_o of the tuple when verdict is kAtMost; otherwise the singleton
  /// witnesses found before stopping.
  std::uint64_t count = 0;
  /// Tree nodes created, root included.
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;

  bool at_most() const { return verdict == Verdict::kAtMost; }
};

/// Node budget 2^{d+2} * tau * ceil(log2 n), saturating.
std::uint64_t exact_node_budget(int d, std::size_t n, std::uint64_t tau);

/// Decides m_o(t) <= tau with CID1 queries by recursive halving, returning the
/// exact count when it is at most tau.
ExactResult exact_count(OracleHandle& o, const PartedTuple& t, std::uint64_t tau);

}  // namespace hgcount

#endif  // HGCOUNT_EXACT_COUNT_HPP
