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

#include "hgcount/exact_count.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "hgcount/math.hpp"

namespace hgcount {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

bool too_small(const std::vector<VertexSet>& positions) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    std::size_t copies = 0;
    for (const auto& other : positions) {
      copies += other == positions[i] ? 1 : 0;
    }
    if (positions[i].size() < copies) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::uint64_t exact_node_budget(int d, std::size_t n, std::uint64_t tau) {
  const auto log_n = static_cast<std::uint64_t>(std::max(1, ceil_log2(n)));
  return saturating_mul(saturating_mul(std::uint64_t{1} << (d + 2), tau), log_n);
}

ExactResult exact_count(OracleHandle& o, const PartedTuple& t, std::uint64_t tau) {
  const int d = o.arity();
  if (t.arity() != d || t.universe() != o.vertex_count()) {
    throw InputError("parted tuple does not match the oracle's d and n");
  }
  ExactResult result;
  result.budget = exact_node_budget(d, o.vertex_count(), tau);
  result.nodes = 1;
  std::vector<std::vector<VertexSet>> stack{t.positions()};
  const auto du = static_cast<std::size_t>(d);
  while (!stack.empty()) {
    auto node = std::move(stack.back());
    stack.pop_back();
    if (too_small(node) || !o.cid1(PartedTuple::from_positions(node))) {
      continue;
    }
    const bool singletons = std::all_of(node.begin(), node.end(), [](const VertexSet& s) { return s.size() == 1; });
    if (singletons) {
      // Equal positions were ruled out by too_small, so this is one ordered edge.
      ++result.count;
      continue;
    }
    // Halve every distinct set once; each position then picks a half.
    std::vector<std::pair<VertexSet, VertexSet>> halves;
    halves.reserve(du);
    for (std::size_t i = 0; i < du; ++i) {
      std::size_t same = i;
      for (std::size_t j = 0; j < i; ++j) {
        if (node[j] == node[i]) {
          same = j;
          break;
        }
      }
      halves.push_back(same == i ? node[i].split_halves() : halves[same]);
    }
    for (unsigned mask = 0; mask < (1U << d); ++mask) {
      std::vector<VertexSet> child;
      child.reserve(du);
      for (std::size_t i = 0; i < du; ++i) {
        child.push_back((mask >> i) & 1U ? halves[i].second : halves[i].first);
      }
      stack.push_back(std::move(child));
    }
    result.nodes += std::uint64_t{1} << d;
    if (result.nodes > result.budget) {
      result.verdict = ExactResult::Verdict::kExceeds;
      return result;
    }
  }
  if (result.count > tau) {
    result.verdict = ExactResult::Verdict::kExceeds;
  }
  return result;
}

}  // namespace hgcount
