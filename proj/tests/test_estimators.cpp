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

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "hgcount/coarse_estimation.hpp"
#include "hgcount/exact_count.hpp"
#include "hgcount/generators.hpp"
#include "hgcount/hypergraph_io.hpp"
#include "hgcount/math.hpp"
#include "hgcount/pipeline.hpp"
#include "hgcount/report.hpp"
#include "hgcount/sparsify.hpp"
#include "reference.hpp"

using namespace hgcount;

namespace {

std::shared_ptr<const Hypergraph> shared(Hypergraph h) { return std::make_shared<const Hypergraph>(std::move(h)); }

}  // namespace

TEST(ExactCount, CountsSmallTuplesExactly) {
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto h = generate_random(16, d, 3 + trial, 900 + 10 * d + trial);
      OracleHandle o(shared(h), {}, trial);
      const auto t = PartedTuple::whole(16, d);
      const auto r = exact_count(o, t, factorial(d) * h.edge_count());
      ASSERT_TRUE(r.at_most());
      EXPECT_EQ(r.count, ref::ordered(h, t));
      EXPECT_LE(r.nodes, r.budget);
    }
  }
}

TEST(ExactCount, ColorfulTupleAndZeroThreshold) {
  const auto h = generate_random(32, 2, 40, 3);
  OracleHandle o(shared(h), {}, 1);
  const PartedTuple t(2, {Part{VertexSet::range(32, 0, 16), 1}, Part{VertexSet::range(32, 16, 32), 1}});
  const auto truth = ref::ordered(h, t);
  const auto r = exact_count(o, t, truth);
  ASSERT_TRUE(r.at_most());
  EXPECT_EQ(r.count, truth);
  if (truth > 0) {
    EXPECT_FALSE(exact_count(o, t, truth - 1).at_most());
  }
  const Hypergraph empty(2, 32, {});
  OracleHandle e(shared(empty));
  const auto z = exact_count(e, PartedTuple::whole(32, 2), 0);
  EXPECT_TRUE(z.at_most());
  EXPECT_EQ(z.count, 0u);
  EXPECT_EQ(z.nodes, 1u);
}

TEST(ExactCount, LargeCountExceeds) {
  OracleHandle o(shared(complete(16, 2)));
  const auto r = exact_count(o, PartedTuple::whole(16, 2), 10);
  EXPECT_FALSE(r.at_most());
  EXPECT_EQ(exact_node_budget(2, 16, 10), 16u * 10u * 4u);
  EXPECT_EQ(exact_node_budget(6, 1 << 20, ~std::uint64_t{0} / 2), ~std::uint64_t{0});
}

TEST(Coarse, ConfigPresets) {
  const auto paper = RoughConfig::paper(3);
  EXPECT_DOUBLE_EQ(paper.gamma_multiplier, 3.0 * 64.0 * 2000.0);
  EXPECT_DOUBLE_EQ(paper.acceptance_fraction, 1.0 / 80.0);
  const auto desk = RoughConfig::desk(2);
  EXPECT_EQ(desk.gamma(64), 64 * 6);
  EXPECT_EQ(desk.top_exponent(2, 64), 12);
  EXPECT_DOUBLE_EQ(desk.divisor(3, 64), 3.0 * 8.0 * 6.0);
}

TEST(Coarse, VerifyEstimateRulesOutEmptyAndAcceptsDense) {
  OracleHandle empty(shared(Hypergraph(2, 16, {})));
  auto rng = make_rng(1, StreamTag::kVerify);
  const auto none = verify_estimate(empty, 4.0, rng);
  EXPECT_FALSE(none.accepted);
  EXPECT_FALSE(none.guess.has_value());
  // Loops j_1 = 0..d*L: d*L + 1 queries for d = 2.
  EXPECT_EQ(none.queries, 2u * 4u + 1u);
  EXPECT_THROW(verify_estimate(empty, 0.5, rng), InputError);

  OracleHandle full(shared(complete(16, 2)));
  int accepted = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto out = verify_estimate(full, 1.0, rng);
    accepted += out.accepted ? 1 : 0;
    if (out.accepted) {
      ASSERT_TRUE(out.guess.has_value());
      EXPECT_EQ(out.guess->size(), 1u);
    }
  }
  EXPECT_EQ(accepted, 50);
}

TEST(Coarse, RoughEstimateWithinBand) {
  const auto h = generate_random(64, 2, 256, 12);
  SimulationConfig sim;
  sim.cid2o_route = Cid2oRoute::kGroundTruth;
  OracleHandle o(shared(h), sim);
  auto rng = make_rng(2, StreamTag::kRough);
  const auto r = rough_estimation(o, RoughConfig::desk(2), rng);
  ASSERT_TRUE(r.found);
  const double m_o = static_cast<double>(h.ordered_edge_count());
  const double L = ceil_log2(64);
  EXPECT_GE(r.m_hat_o, m_o / (2.0 * 2.0 * L));
  EXPECT_LE(r.m_hat_o, m_o * 2.0 * 2.0 * L);
  EXPECT_GT(r.acceptances, static_cast<int>(RoughConfig::desk(2).acceptance_fraction * r.gamma));
  EXPECT_GT(r.queries.cid2o, 0u);
}

TEST(Coarse, UnorderedHandlesEmpty) {
  OracleHandle o(shared(Hypergraph(2, 16, {})));
  auto rng = make_rng(3, StreamTag::kRough);
  const auto r = rough_estimation_unordered(o, RoughConfig::desk(2), rng);
  EXPECT_TRUE(r.confirmed_empty);
  EXPECT_DOUBLE_EQ(r.m_hat, 0.0);
  EXPECT_FALSE(r.ordered.found);
}

TEST(Sparsify, HashTableShapeAndLimits) {
  auto rng = make_rng(5, StreamTag::kHash);
  EXPECT_EQ(build_hash(4, 3, rng).size(), 64u);
  EXPECT_THROW(build_hash(4, 7, rng), InputError);
  EXPECT_THROW(build_hash(0, 2, rng), InputError);
  const auto ones = build_hash(1, 5, rng);
  EXPECT_EQ(std::accumulate(ones.begin(), ones.end(), 0), 1);
  std::size_t set = 0;
  for (int i = 0; i < 200; ++i) {
    const auto t = build_hash(4, 2, rng);
    set += static_cast<std::size_t>(std::accumulate(t.begin(), t.end(), 0));
  }
  EXPECT_NEAR(static_cast<double>(set) / (200.0 * 16.0), 0.25, 0.05);
}

TEST(Sparsify, ChildrenPartitionEdgesAndScaleWeights) {
  const auto h = generate_random(20, 3, 80, 21);
  auto rng = make_rng(6, StreamTag::kColoring);
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedTuple root{PartedTuple::whole(20, 3), 2.0};
    ColoringScheme scheme;
    const auto children = sparsify(root, 3, rng, &scheme);
    // Expected survivors: ordered edges whose color vector hashes to 1.
    std::uint64_t expected = 0;
    for (auto e : ref::edges_of(h)) {
      std::sort(e.begin(), e.end());
      do {
        std::vector<int> c;
        for (Vertex v : e) {
          c.push_back(scheme.colors[v]);
        }
        expected += scheme.hash(c) ? 1 : 0;
      } while (std::next_permutation(e.begin(), e.end()));
    }
    std::uint64_t total = 0;
    for (const auto& child : children) {
      EXPECT_DOUBLE_EQ(child.weight, 6.0);
      EXPECT_EQ(child.sparsify_rounds, 1);
      total += ref::ordered(h, child.tuple);
    }
    EXPECT_EQ(total, expected);
  }
  const WeightedTuple root{PartedTuple::whole(20, 3)};
  const auto kept = sparsify(root, 1, rng);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(ref::ordered(h, kept[0].tuple), h.ordered_edge_count());
}

TEST(Importance, QuotaAndValidation) {
  ImportanceConfig cfg;
  cfg.lambda = 0.5;
  cfg.delta = 0.1;
  EXPECT_EQ(importance_quota(cfg, 1), static_cast<std::size_t>(std::ceil(std::log(10.0) / 0.25)));
  cfg.max_output = 6;
  EXPECT_EQ(importance_quota(cfg, 3), 2u);
  EXPECT_EQ(importance_quota(cfg, 10), 1u);
  cfg.lambda = 0.0;
  EXPECT_THROW(importance_quota(cfg, 1), InputError);
  cfg = {};
  cfg.delta = 1.0;
  EXPECT_THROW(importance_quota(cfg, 1), InputError);
}

TEST(Importance, UnbiasedAndCapped) {
  std::vector<double> weights(200);
  std::vector<double> estimates(200);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = 1.0 + static_cast<double>(i % 4);
    estimates[i] = 1.0 + static_cast<double>(i % 7);
  }
  ImportanceConfig cfg;
  cfg.lambda = 0.5;
  cfg.max_output = 40;
  auto rng = make_rng(7, StreamTag::kImportance);
  double sum = 0.0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    const auto picks = importance_sample_indices(weights, estimates, cfg, rng);
    EXPECT_LE(picks.size(), 40u);
    for (std::size_t j = 1; j < picks.size(); ++j) {
      EXPECT_LT(picks[j - 1].index, picks[j].index);
    }
    for (const auto& p : picks) {
      sum += p.factor * weights[p.index] * estimates[p.index];
    }
  }
  double truth = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    truth += weights[i] * estimates[i];
  }
  EXPECT_NEAR(sum / trials, truth, 0.03 * truth);
  const std::vector<double> bad{0.0};
  const std::vector<double> one{1.0};
  EXPECT_THROW(importance_sample_indices(bad, one, cfg, rng), InputError);
}

TEST(Pipeline, ExactOnSmallInstance) {
  const auto h = generate_random(32, 2, 12, 31);
  OracleHandle o(shared(h), {}, 1);
  const auto cfg = PipelineConfig::desk(2, 0.3);
  const auto r = estimate(o, cfg, 5);
  EXPECT_FALSE(r.aborted);
  EXPECT_DOUBLE_EQ(r.m_hat, 12.0);
  EXPECT_DOUBLE_EQ(r.m_hat_o, 24.0);
  ASSERT_GE(r.trace.size(), 2u);
  EXPECT_EQ(r.trace.front().iteration, 0);
  EXPECT_EQ(r.trace.back().step, StepKind::kDone);
  EXPECT_THROW(estimate(o, PipelineConfig::desk(2, 1.5), 1), InputError);
}

TEST(Pipeline, DeterministicAndTraceConsistent) {
  const auto h = generate_random(64, 2, 600, 41);
  SimulationConfig sim;
  sim.cid2o_route = Cid2oRoute::kGroundTruth;
  auto cfg = PipelineConfig::desk(2, 0.3);
  cfg.record_tuples = true;
  OracleHandle a(shared(h), sim, 3);
  OracleHandle b(shared(h), sim, 3);
  const auto ra = estimate(a, cfg, 17);
  const auto rb = estimate(b, cfg, 17);
  EXPECT_DOUBLE_EQ(ra.m_hat, rb.m_hat);
  EXPECT_EQ(ra.queries, rb.queries);
  EXPECT_FALSE(ra.aborted);
  EXPECT_GT(ra.m_hat, 0.0);
  const auto check = trace_diagnostics(ra, h);
  ASSERT_EQ(check.est.size(), ra.trace.size());
  EXPECT_DOUBLE_EQ(check.est.front(), static_cast<double>(h.ordered_edge_count()));
  EXPECT_DOUBLE_EQ(check.act.back(), 0.0);
  EXPECT_NEAR(check.est.back(), ra.m_hat_o, 1e-6 * ra.m_hat_o);
}

TEST(Pipeline, ImportanceStepKeepsPopulationAtMostN) {
  const auto h = shared(generate_random(128, 2, 3000, 909));
  const auto cfg = PipelineConfig::desk(2, 0.3);
  const auto cap = static_cast<std::size_t>(cfg.resolved_population(2, 128));
  int importance_steps = 0;
  for (int run = 0; run < 10; ++run) {
    OracleHandle o(h, {}, run);
    const auto r = estimate(o, cfg, 100 + run);
    for (const auto& e : r.trace) {
      if (e.step == StepKind::kImportance) {
        ++importance_steps;
        EXPECT_LE(e.tuple_count, cap);
        EXPECT_FALSE(e.rescale_factors.empty());
      }
    }
  }
  EXPECT_GT(importance_steps, 0);
}

TEST(Pipeline, BruteForce) {
  const auto h = generate_random(12, 3, 50, 2);
  OracleHandle o(shared(h));
  EXPECT_EQ(brute_force_estimate(o), 50u);
  EXPECT_EQ(o.snapshot().cid, binomial(12, 3));
}

TEST(Report, JsonKeyOrderAndCsv) {
  const auto h = generate_random(16, 2, 10, 1);
  Json per_trial = Json::array();
  per_trial.push_back({{"trial", 0}, {"m_hat", 10.0}, {"queries", {{"cid", 3}}}});
  per_trial.push_back({{"trial", 1}, {"m_hat", 11.0}, {"queries", {{"cid", 4}}}});
  const std::vector<double> values{10.0, 11.0};
  const std::vector<bool> hits{true, false};
  const auto agg = aggregate(values, hits);
  EXPECT_DOUBLE_EQ(agg.mean, 10.5);
  EXPECT_NEAR(agg.stdev, std::sqrt(0.5), 1e-12);
  EXPECT_DOUBLE_EQ(agg.band_hit_rate, 0.5);
  const auto report = make_report(to_json(PipelineConfig::desk(2, 0.3)), instance_summary(h), per_trial, agg,
                                  QueryLedger{7, 0, 0, 0, 0});
  std::vector<std::string> keys;
  for (const auto& [key, value] : report.items()) {
    keys.push_back(key);
  }
  EXPECT_EQ(keys, (std::vector<std::string>{"config", "instance_summary", "per_trial", "aggregate", "ledger"}));
  EXPECT_EQ(report["instance_summary"]["m"], 10);
  EXPECT_EQ(report["ledger"]["cid"], 7);

  const auto csv = to_csv(report);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  EXPECT_NE(header.find("config.epsilon"), std::string::npos);
  EXPECT_NE(header.find("queries.cid"), std::string::npos);
  std::string row;
  int rows = 0;
  while (std::getline(lines, row)) {
    rows += row.empty() ? 0 : 1;
  }
  EXPECT_EQ(rows, 2);
}
