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

#include "hgcount/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "hgcount/math.hpp"

namespace hgcount {

QueryLedger& QueryLedger::operator+=(const QueryLedger& o) {
  cid += o.cid;
  cid1 += o.cid1;
  cid2 += o.cid2;
  cid2o += o.cid2o;
  exact_answers += o.exact_answers;
  return *this;
}

QueryLedger& QueryLedger::operator-=(const QueryLedger& o) {
  if (o.cid > cid || o.cid1 > cid1 || o.cid2 > cid2 || o.cid2o > cid2o || o.exact_answers > exact_answers) {
    throw InputError("ledger difference would be negative");
  }
  cid -= o.cid;
  cid1 -= o.cid1;
  cid2 -= o.cid2;
  cid2o -= o.cid2o;
  exact_answers -= o.exact_answers;
  return *this;
}

int SimulationConfig::default_repetitions(int d, std::size_t n) {
  const double r = ipow(d, d) * (d + 2) * std::log(static_cast<double>(n));
  return std::max(1, static_cast<int>(std::ceil(r)));
}

OracleHandle::OracleHandle(std::shared_ptr<const Hypergraph> h, SimulationConfig config, std::uint64_t seed)
    : h_(std::move(h)), config_(config), repetitions_(0), rng_(make_rng(seed, StreamTag::kCid1Partition)) {
  if (!h_) {
    throw InputError("oracle needs a hypergraph");
  }
  if (config_.cid1_repetitions < 0) {
    throw InputError("cid1_repetitions must be >= 1 (or 0 for the default)");
  }
  repetitions_ = config_.cid1_repetitions > 0 ? config_.cid1_repetitions
                                              : SimulationConfig::default_repetitions(h_->arity(), h_->vertex_count());
}

void OracleHandle::check_arity(std::span<const VertexSet> sets) const {
  if (sets.size() != static_cast<std::size_t>(arity())) {
    throw InputError("oracle query needs " + std::to_string(arity()) + " sets, got " + std::to_string(sets.size()));
  }
  for (const auto& s : sets) {
    if (s.universe() != vertex_count()) {
      throw InputError("oracle query set over the wrong universe");
    }
  }
}

bool OracleHandle::raw_cid(std::span<const VertexSet> sets) {
  ++ledger_.cid;
  if (std::any_of(sets.begin(), sets.end(), [](const VertexSet& s) { return s.empty(); })) {
    return false;
  }
  return any_colorful(*h_, sets);
}

bool OracleHandle::cid(std::span<const VertexSet> sets) {
  check_arity(sets);
  if (!pairwise_disjoint(sets)) {
    throw InputError("CID query sets must be pairwise disjoint");
  }
  return raw_cid(sets);
}

bool OracleHandle::cid1(const PartedTuple& t) {
  if (t.arity() != arity() || t.universe() != vertex_count()) {
    throw InputError("parted tuple does not match the oracle's d and n");
  }
  ++ledger_.cid1;
  if (config_.exact_cid1) {
    ++ledger_.exact_answers;
    return count_ordered(*h_, t) != 0;
  }
  return simulate_cid1(t);
}

bool OracleHandle::simulate_cid1(const PartedTuple& t) {
  const auto& parts = t.parts();
  for (const auto& p : parts) {
    if (p.set.size() < static_cast<std::size_t>(p.multiplicity)) {
      return false;
    }
  }
  const bool all_simple = std::all_of(parts.begin(), parts.end(), [](const Part& p) { return p.multiplicity == 1; });
  std::vector<VertexSet> sets;
  sets.reserve(static_cast<std::size_t>(arity()));
  if (all_simple) {
    for (const auto& p : parts) {
      sets.push_back(p.set);
    }
    return raw_cid(sets);
  }
  for (int round = 0; round < repetitions_; ++round) {
    sets.clear();
    for (const auto& p : parts) {
      if (p.multiplicity == 1) {
        sets.push_back(p.set);
        continue;
      }
      const std::size_t base = sets.size();
      for (int i = 0; i < p.multiplicity; ++i) {
        sets.emplace_back(vertex_count());
      }
      std::uniform_int_distribution<int> label(0, p.multiplicity - 1);
      for (Vertex v : p.set) {
        sets[base + static_cast<std::size_t>(label(rng_))].insert(v);
      }
    }
    if (raw_cid(sets)) {
      return true;
    }
  }
  return false;
}

bool OracleHandle::cid2(std::span<const VertexSet> sets) {
  check_arity(sets);
  ++ledger_.cid2;
  if (std::any_of(sets.begin(), sets.end(), [](const VertexSet& s) { return s.empty(); })) {
    return false;
  }
  if (config_.exact_cid2) {
    ++ledger_.exact_answers;
    return any_meeting(*h_, sets);
  }
  return simulate_cid2(sets);
}

bool OracleHandle::simulate_cid2(std::span<const VertexSet> sets) {
  const int d = arity();
  const std::size_t n = vertex_count();
  // Venn atoms keyed by the bitmask of sets containing the vertex.
  std::map<unsigned, VertexSet> atoms;
  VertexSet all(n);
  for (const auto& s : sets) {
    all |= s;
  }
  for (Vertex v : all) {
    unsigned sig = 0;
    for (int i = 0; i < d; ++i) {
      if (sets[static_cast<std::size_t>(i)].contains(v)) {
        sig |= 1U << i;
      }
    }
    atoms.try_emplace(sig, n).first->second.insert(v);
  }
  std::vector<std::vector<unsigned>> choices(static_cast<std::size_t>(d));
  for (const auto& [sig, members] : atoms) {
    for (int i = 0; i < d; ++i) {
      if ((sig & (1U << i)) != 0) {
        choices[static_cast<std::size_t>(i)].push_back(sig);
      }
    }
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<VertexSet> positions(static_cast<std::size_t>(d));
  while (true) {
    std::map<unsigned, int> used;
    for (int i = 0; i < d; ++i) {
      ++used[choices[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]];
    }
    const bool feasible = std::all_of(used.begin(), used.end(), [&](const auto& kv) {
      return atoms.at(kv.first).size() >= static_cast<std::size_t>(kv.second);
    });
    if (feasible) {
      for (int i = 0; i < d; ++i) {
        positions[static_cast<std::size_t>(i)] = atoms.at(choices[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]);
      }
      if (cid1(PartedTuple::from_positions(positions))) {
        return true;
      }
    }
    int i = d - 1;
    while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == choices[static_cast<std::size_t>(i)].size()) {
      idx[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) {
      return false;
    }
  }
}

bool OracleHandle::cid2o(std::span<const VertexSet> sets) {
  check_arity(sets);
  ++ledger_.cid2o;
  if (config_.cid2o_route == Cid2oRoute::kGroundTruth) {
    if (std::any_of(sets.begin(), sets.end(), [](const VertexSet& s) { return s.empty(); })) {
      return false;
    }
    ++ledger_.exact_answers;
    return any_ordered(*h_, sets);
  }
  return cid2(sets);
}

}  // namespace hgcount
