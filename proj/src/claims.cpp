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

#include "hgcount/claims.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "hgcount/coarse_estimation.hpp"
#include "hgcount/math.hpp"
#include "hgcount/rng.hpp"
#include "hgcount/sparsify.hpp"

namespace hgcount {

namespace {

std::map<int, std::size_t> bucket_sizes(const std::vector<std::uint64_t>& counts) {
  std::map<int, std::size_t> sizes;
  for (auto c : counts) {
    if (c != 0) {
      ++sizes[static_cast<int>(std::bit_width(c)) - 1];
    }
  }
  return sizes;
}

struct ChainSearch {
  const Hypergraph& h;
  double slots;  // d log n + 1
  BucketChainReport report;
  std::vector<Vertex> prefix;
  std::vector<ChainStep> chain;

  // Level i (1-based, i >= 2): prefix holds a_1..a_{i-1}; prev_q is q_{i-1}.
  // `valid` records whether every bucket on the chain so far met its bound.
  void descend(int i, int prev_q, bool valid) {
    const int d = h.arity();
    if (i > d - 1) {
      if (valid && report.witness.empty()) {
        report.witness = chain;
      }
      return;
    }
    const auto counts = continuation_counts(h, prefix);
    const auto sizes = bucket_sizes(counts);
    ++report.prefixes_checked;
    const auto meets = [&](int q) {
      return static_cast<double>(sizes.at(q)) > std::ldexp(1.0, prev_q) / (std::ldexp(1.0, q + 1) * slots);
    };
    const bool any = std::any_of(sizes.begin(), sizes.end(), [&](const auto& kv) { return meets(kv.first); });
    if (!any) {
      ++report.counterexamples;
      if (report.first_counterexample.empty()) {
        report.first_counterexample = chain;
      }
    }
    for (Vertex u = 0; u < h.vertex_count(); ++u) {
      if (counts[u] == 0) {
        continue;
      }
      const int q = static_cast<int>(std::bit_width(counts[u])) - 1;
      prefix.push_back(u);
      chain.push_back({q, u});
      descend(i + 1, q, valid && meets(q));
      prefix.pop_back();
      chain.pop_back();
    }
  }
};

double three_sigma(double p, int trials) { return 3.0 * std::sqrt(p * (1.0 - p) / trials); }

double acceptance(std::shared_ptr<const Hypergraph> h, const SimulationConfig& sim, double r_hat, int trials,
                  std::uint64_t seed) {
  OracleHandle o(std::move(h), sim, derive(seed, 41, 0));
  auto rng = make_rng(seed, StreamTag::kClaims);
  int accepted = 0;
  for (int t = 0; t < trials; ++t) {
    accepted += verify_estimate(o, r_hat, rng).accepted ? 1 : 0;
  }
  return static_cast<double>(accepted) / trials;
}

}  // namespace

BucketChainReport bucket_chain_search(const Hypergraph& h) {
  const int d = h.arity();
  const double slots = d * ceil_log2(h.vertex_count()) + 1.0;
  ChainSearch search{h, slots, {}, {}, {}};
  const double m_o = static_cast<double>(h.ordered_edge_count());
  if (m_o == 0) {
    search.report.first_level_holds = true;
    return search.report;
  }
  const auto counts = continuation_counts(h, {});
  const auto sizes = bucket_sizes(counts);
  for (const auto& [q, size] : sizes) {
    if (static_cast<double>(size) > m_o / (std::ldexp(1.0, q + 1) * slots)) {
      search.report.first_level_holds = true;
    }
  }
  for (Vertex u = 0; u < h.vertex_count(); ++u) {
    if (counts[u] == 0) {
      continue;
    }
    const int q = static_cast<int>(std::bit_width(counts[u])) - 1;
    search.prefix = {u};
    search.chain = {{q, u}};
    search.descend(2, q, m_o / (std::ldexp(1.0, q + 1) * slots) < static_cast<double>(sizes.at(q)));
  }
  return search.report;
}

ClaimResult check_upper_acceptance(std::shared_ptr<const Hypergraph> h, const SimulationConfig& sim, int trials,
                          std::uint64_t seed) {
  const int d = h->arity();
  const double L = std::max(1, ceil_log2(h->vertex_count()));
  const double m_o = static_cast<double>(h->ordered_edge_count());
  const double floor_r = 20.0 * ipow(d, 2 * d - 3) * ipow(4.0, d) * std::max(m_o, 1.0) * ipow(L, 2 * d - 3);
  const double r_hat = std::exp2(std::ceil(std::log2(floor_r)));
  ClaimResult r;
  r.name = "upper-acceptance";
  r.trials = static_cast<std::uint64_t>(trials);
  r.bound = 1.0 / (20.0 * ipow(2.0, d));
  r.measured = acceptance(std::move(h), sim, r_hat, trials, seed);
  r.sigma = std::sqrt(r.bound * (1.0 - r.bound) / trials);
  r.passed = r.measured <= r.bound + three_sigma(r.bound, trials);
  std::ostringstream s;
  s << "R_hat=" << r_hat << " m_o=" << m_o;
  r.detail = s.str();
  return r;
}

ClaimResult check_lower_acceptance(std::shared_ptr<const Hypergraph> h, const SimulationConfig& sim, int trials,
                          std::uint64_t seed) {
  const int d = h->arity();
  const double L = std::max(1, ceil_log2(h->vertex_count()));
  const double m_o = static_cast<double>(h->ordered_edge_count());
  const double ceiling_r = m_o / (4.0 * d * L);
  ClaimResult r;
  r.name = "lower-acceptance";
  r.trials = static_cast<std::uint64_t>(trials);
  r.bound = 1.0 / ipow(2.0, d);
  r.sigma = std::sqrt(r.bound * (1.0 - r.bound) / trials);
  if (ceiling_r < 1.0) {
    r.applicable = false;
    r.detail = "m_o too small: no guess R_hat >= 1 satisfies the hypothesis";
    return r;
  }
  const double r_hat = std::exp2(std::floor(std::log2(ceiling_r)));
  r.measured = acceptance(std::move(h), sim, r_hat, trials, seed);
  r.passed = r.measured >= r.bound - three_sigma(r.bound, trials);
  std::ostringstream s;
  s << "R_hat=" << r_hat << " m_o=" << m_o;
  r.detail = s.str();
  return r;
}

ClaimResult check_simulation_soundness(std::shared_ptr<const Hypergraph> h, int trials, std::uint64_t seed) {
  const int d = h->arity();
  const std::size_t n = h->vertex_count();
  OracleHandle o(h, {}, derive(seed, 21, 0));
  auto rng = make_rng(seed, StreamTag::kClaims, 1);
  std::bernoulli_distribution coin(0.5);
  std::uint64_t negatives = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t attempts = 0;
  while (negatives < static_cast<std::uint64_t>(trials) && attempts < 200ULL * static_cast<std::uint64_t>(trials)) {
    ++attempts;
    const double p = std::uniform_real_distribution<double>(0.02, 0.5)(rng);
    std::vector<VertexSet> sets;
    for (int i = 0; i < d; ++i) {
      sets.push_back(sample_subset(VertexSet::full(n), p, rng));
    }
    if (any_ordered(*h, sets)) {
      continue;
    }
    if (coin(rng)) {
      ++negatives;
      false_positives += o.cid2(sets) ? 1 : 0;
    } else {
      // Collapse to an equal-or-disjoint tuple: repeat the first set d times.
      std::vector<VertexSet> same(static_cast<std::size_t>(d), sets[0]);
      if (any_ordered(*h, same)) {
        continue;
      }
      ++negatives;
      false_positives += o.cid1(PartedTuple::from_positions(same)) ? 1 : 0;
    }
  }
  ClaimResult r;
  r.name = "simulation-soundness";
  r.trials = negatives;
  r.measured = static_cast<double>(false_positives);
  r.bound = 0.0;
  r.passed = false_positives == 0 && negatives > 0;
  r.detail = std::to_string(negatives) + " negative queries, " + std::to_string(false_positives) + " false positives";
  return r;
}

ClaimResult check_bucket_claim(const Hypergraph& h) {
  const auto report = bucket_chain_search(h);
  ClaimResult r;
  r.name = "bucket-chain-existence";
  r.trials = report.prefixes_checked;
  r.measured = static_cast<double>(report.counterexamples);
  r.passed = report.first_level_holds && report.counterexamples == 0;
  r.detail = std::string("first level ") + (report.first_level_holds ? "holds" : "fails") + ", " +
             std::to_string(report.prefixes_checked) + " prefixes checked";
  return r;
}

ClaimResult check_sparsify_unbiased(const Hypergraph& h, int k, int trials, std::uint64_t seed) {
  auto rng = make_rng(seed, StreamTag::kClaims, 2);
  const WeightedTuple root{PartedTuple::whole(h.vertex_count(), h.arity()), 1.0, 0, 1.0};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    double scaled = 0.0;
    for (const auto& child : sparsify(root, k, rng)) {
      scaled += child.weight * static_cast<double>(count_ordered(h, child.tuple));
    }
    sum += scaled;
    sum_sq += scaled * scaled;
  }
  const double mean = sum / trials;
  const double var = trials > 1 ? (sum_sq - trials * mean * mean) / (trials - 1) : 0.0;
  ClaimResult r;
  r.name = "sparsify-unbiased";
  r.trials = static_cast<std::uint64_t>(trials);
  r.measured = mean;
  r.bound = static_cast<double>(h.ordered_edge_count());
  r.sigma = std::sqrt(std::max(var, 0.0) / trials);
  r.passed = std::abs(mean - r.bound) <= 3.0 * r.sigma + 1e-9;
  return r;
}

}  // namespace hgcount
