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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <random>

#include "hgcount/generators.hpp"
#include "hgcount/hypergraph.hpp"
#include "hgcount/hypergraph_io.hpp"
#include "hgcount/math.hpp"
#include "hgcount/rng.hpp"
#include "reference.hpp"

using namespace hgcount;

namespace {

std::vector<VertexSet> random_sets(std::size_t n, int d, double p, Rng& rng) {
  std::vector<VertexSet> sets;
  for (int i = 0; i < d; ++i) {
    sets.push_back(sample_subset(VertexSet::full(n), p, rng));
  }
  return sets;
}

std::vector<VertexSet> random_disjoint_sets(std::size_t n, int d, Rng& rng) {
  std::vector<VertexSet> sets(static_cast<std::size_t>(d), VertexSet(n));
  std::uniform_int_distribution<int> slot(0, d);  // d means "unused"
  for (Vertex v = 0; v < n; ++v) {
    const int s = slot(rng);
    if (s < d) {
      sets[static_cast<std::size_t>(s)].insert(v);
    }
  }
  return sets;
}

}  // namespace

TEST(VertexSet, BasicOperations) {
  VertexSet a(10, {1, 3, 5});
  VertexSet b(10, {3, 4});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(3));
  EXPECT_FALSE(a.contains(4));
  EXPECT_EQ((a & b).to_vector(), std::vector<Vertex>({3}));
  EXPECT_EQ((a | b).size(), 4u);
  EXPECT_EQ((a - b).to_vector(), std::vector<Vertex>({1, 5}));
  EXPECT_FALSE(a.disjoint_with(b));
  EXPECT_TRUE(VertexSet(10, {3}).subset_of(a));
  EXPECT_THROW(a.insert(10), InputError);
  EXPECT_THROW(a.disjoint_with(VertexSet(11)), InputError);
  EXPECT_EQ(VertexSet::full(130).size(), 130u);
  EXPECT_EQ(VertexSet::range(100, 60, 70).size(), 10u);
}

TEST(VertexSet, SplitHalvesKeepsCeilingFirst) {
  const auto [lo, hi] = VertexSet(20, {2, 4, 6, 8, 10}).split_halves();
  EXPECT_EQ(lo.to_vector(), std::vector<Vertex>({2, 4, 6}));
  EXPECT_EQ(hi.to_vector(), std::vector<Vertex>({8, 10}));
  const auto [one, none] = VertexSet(5, {3}).split_halves();
  EXPECT_EQ(one.size(), 1u);
  EXPECT_TRUE(none.empty());
}

TEST(Hypergraph, CanonicalizesAndRejectsBadEdges) {
  Hypergraph h(3, 6, {{2, 1, 0}, {5, 3, 4}});
  EXPECT_EQ(h.edge_count(), 2u);
  EXPECT_EQ(std::vector<Vertex>(h.edge(0).begin(), h.edge(0).end()), std::vector<Vertex>({0, 1, 2}));
  EXPECT_TRUE(h.has_edge(std::vector<Vertex>{3, 4, 5}));
  EXPECT_FALSE(h.has_edge(std::vector<Vertex>{0, 1, 3}));
  EXPECT_EQ(h, Hypergraph(3, 6, {{3, 4, 5}, {0, 2, 1}}));
  EXPECT_THROW(Hypergraph(3, 6, {{0, 1, 2}, {2, 0, 1}}), InputError);
  EXPECT_THROW(Hypergraph(3, 6, {{0, 1, 1}}), InputError);
  EXPECT_THROW(Hypergraph(3, 6, {{0, 1, 6}}), InputError);
  EXPECT_THROW(Hypergraph(3, 6, {{0, 1}}), InputError);
  EXPECT_THROW(Hypergraph(1, 6, {}), InputError);
  EXPECT_THROW(Hypergraph(7, 10, {}), InputError);
  EXPECT_THROW(Hypergraph(2, 3, {}), InputError);
}

TEST(Counting, TrivialCases) {
  const Hypergraph empty(3, 8, {});
  const std::vector<VertexSet> disjoint{VertexSet(8, {0}), VertexSet(8, {1}), VertexSet(8, {2})};
  EXPECT_EQ(count_colorful(empty, disjoint), 0u);
  const Hypergraph one(3, 8, {{0, 1, 2}});
  EXPECT_EQ(count_colorful(one, disjoint), 1u);

  const Hypergraph edge(2, 6, {{3, 4}});
  const std::vector<VertexSet> same{VertexSet(6, {3}), VertexSet(6, {3})};
  EXPECT_EQ(count_meeting(edge, same), 1u);
  EXPECT_EQ(count_ordered(edge, same), 0u);
  EXPECT_THROW(count_colorful(edge, same), InputError);
}

TEST(Counting, OrderedAllUniverseIsFactorialTimesM) {
  const auto h = generate_random(10, 3, 5, 7);
  const std::vector<VertexSet> all(3, VertexSet::full(10));
  EXPECT_EQ(count_ordered(h, all), 30u);
  EXPECT_EQ(count_meeting(h, all), 5u);
  for (int d = 2; d <= 4; ++d) {
    const auto g = generate_random(12, d, 20, 100 + d);
    const std::vector<VertexSet> u(static_cast<std::size_t>(d), VertexSet::full(12));
    EXPECT_EQ(count_ordered(g, u), factorial(d) * g.edge_count());
    EXPECT_EQ(count_ordered(g, PartedTuple::whole(12, d)), g.ordered_edge_count());
  }
}

TEST(Counting, AgreesWithBruteForce) {
  auto rng = make_rng(11, StreamTag::kClaims);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto h = generate_random(12, d, 20, 1000 * d + trial);
      const auto overlapping = random_sets(12, d, 0.5, rng);
      EXPECT_EQ(count_meeting(h, overlapping), ref::meeting(h, overlapping));
      EXPECT_EQ(count_ordered(h, overlapping), ref::ordered(h, overlapping));
      EXPECT_EQ(any_ordered(h, overlapping), ref::ordered(h, overlapping) != 0);
      EXPECT_EQ(any_meeting(h, overlapping), ref::meeting(h, overlapping) != 0);
      const auto disjoint = random_disjoint_sets(12, d, rng);
      EXPECT_EQ(count_colorful(h, disjoint), ref::colorful(h, disjoint));
      EXPECT_EQ(any_colorful(h, disjoint), ref::colorful(h, disjoint) != 0);
      EXPECT_LE(count_colorful(h, disjoint), count_meeting(h, disjoint));
    }
  }
}

TEST(Counting, PermutedOrderedSumsEqualFactorialTimesColorful) {
  auto rng = make_rng(12, StreamTag::kClaims);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 3;
    const auto h = generate_random(12, d, 25, 77 + trial);
    auto sets = random_disjoint_sets(12, d, rng);
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t total = 0;
    do {
      std::vector<VertexSet> arranged;
      for (int p : perm) {
        arranged.push_back(sets[static_cast<std::size_t>(p)]);
      }
      total += count_ordered(h, arranged);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(total, factorial(d) * count_colorful(h, sets));
  }
}

TEST(PartedTuple, ValidatesAndMerges) {
  EXPECT_THROW(PartedTuple(3, {Part{VertexSet::full(8), 2}}), InputError);
  EXPECT_THROW(PartedTuple(2, {Part{VertexSet(8, {1, 2}), 1}, Part{VertexSet(8, {2, 3}), 1}}), InputError);
  const std::vector<VertexSet> positions{VertexSet(8, {0, 1}), VertexSet(8, {5}), VertexSet(8, {0, 1})};
  const auto t = PartedTuple::from_positions(positions);
  ASSERT_EQ(t.parts().size(), 2u);
  EXPECT_EQ(t.parts()[0].multiplicity, 2);
  EXPECT_EQ(t.positions().size(), 3u);
  EXPECT_DOUBLE_EQ(t.position_volume(), 4.0);
  const std::vector<VertexSet> clash{VertexSet(8, {0, 1}), VertexSet(8, {1, 2})};
  EXPECT_THROW(PartedTuple::from_positions(clash), InputError);
}

TEST(Buckets, EmptyHypergraphHasNoBuckets) {
  const Hypergraph h(3, 8, {});
  const auto p = bucket_profile(h, {});
  ASSERT_EQ(p.levels.size(), 1u);
  EXPECT_TRUE(p.levels[0].empty());
  EXPECT_EQ(p.contributing(0), 0u);
}

TEST(Buckets, StarAndLevelSums) {
  const auto h = star(16, 2, 10, 5);
  const auto p = bucket_profile(h, {});
  const auto expected = ref::continuation(h, {});
  // Vertex 0 has continuation count 10 (one per edge): bucket 3.
  EXPECT_TRUE(p.levels[0].at(3).contains(0));
  std::size_t positive = 0;
  for (Vertex v = 0; v < 16; ++v) {
    if (expected[v] == 0) {
      continue;
    }
    ++positive;
    const int q = static_cast<int>(std::bit_width(expected[v])) - 1;
    EXPECT_TRUE(p.levels[0].at(q).contains(v));
  }
  EXPECT_EQ(p.contributing(0), positive);
}

TEST(Buckets, DeeperLevelsAndPrefixValidation) {
  const auto h = generate_random(12, 3, 40, 9);
  const auto level0 = ref::continuation(h, {});
  Vertex a = 0;
  while (level0[a] == 0) {
    ++a;
  }
  const int q = static_cast<int>(std::bit_width(level0[a])) - 1;
  const std::vector<ChainStep> prefix{{q, a}};
  const auto p = bucket_profile(h, prefix);
  ASSERT_EQ(p.levels.size(), 2u);
  const auto level1 = ref::continuation(h, {a});
  std::size_t positive = 0;
  for (auto c : level1) {
    positive += c != 0 ? 1 : 0;
  }
  EXPECT_EQ(p.contributing(1), positive);
  const std::vector<ChainStep> wrong{{q + 1, a}};
  EXPECT_THROW(bucket_profile(h, wrong), InputError);
  const std::vector<ChainStep> too_long{{q, a}, {0, 0}, {0, 0}};
  EXPECT_THROW(bucket_profile(h, too_long), InputError);
}

TEST(Buckets, FirstLevelInequalityHoldsOnRandomInstances) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = generate_skewed(16, 2 + trial % 2, 30, 1.0, 500 + trial);
    const auto p = bucket_profile(h, {});
    const double m_o = static_cast<double>(h.ordered_edge_count());
    const double slots = h.arity() * ceil_log2(16) + 1.0;
    bool found = false;
    for (const auto& [q, members] : p.levels[0]) {
      found = found || static_cast<double>(members.size()) > m_o / (std::ldexp(1.0, q + 1) * slots);
    }
    EXPECT_TRUE(found) << "trial " << trial;
  }
}

TEST(Generators, SizesAndDeterminism) {
  EXPECT_EQ(generate_random(10, 2, 0, 1).edge_count(), 0u);
  EXPECT_EQ(generate_random(10, 3, 120, 1).edge_count(), 120u);
  EXPECT_THROW(generate_random(10, 3, 121, 1), InputError);
  EXPECT_EQ(generate_random(64, 3, 500, 4), generate_random(64, 3, 500, 4));
  EXPECT_NE(generate_random(64, 3, 500, 4), generate_random(64, 3, 500, 5));
  const auto s = generate_skewed(32, 2, 200, 1.5, 8);
  EXPECT_EQ(s.edge_count(), 200u);
  EXPECT_EQ(s, generate_skewed(32, 2, 200, 1.5, 8));
  EXPECT_GT(s.degree(0), s.degree(31));
  EXPECT_EQ(generate_skewed(8, 2, 28, 3.0, 1).edge_count(), 28u);
  EXPECT_THROW(generate_skewed(8, 2, 10, -1.0, 1), InputError);
  EXPECT_EQ(complete(8, 3).edge_count(), 56u);
  const auto st = star(10, 3, 36, 2);
  EXPECT_EQ(st.degree(0), 36u);
  EXPECT_THROW(star(10, 3, 37, 2), InputError);
}

TEST(Io, RoundTripAndErrors) {
  const auto h = generate_random(20, 3, 50, 3);
  const auto path = std::filesystem::temp_directory_path() / "hgcount_roundtrip.hg";
  store_hypergraph(h, path);
  EXPECT_EQ(load_hypergraph(path), h);
  std::filesystem::remove(path);

  EXPECT_EQ(parse_hypergraph("# comment\n2 5 2\n1 0\n\n4 3\n"), Hypergraph(2, 5, {{0, 1}, {3, 4}}));
  const auto line_of = [](const std::string& text) {
    try {
      parse_hypergraph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  EXPECT_EQ(line_of("2 5 2\n0 1\n0 9\n"), 3u);
  EXPECT_EQ(line_of("2 5 2\n0 1\n1 0\n"), 3u);
  EXPECT_EQ(line_of("2 5 1\n0 1 2\n"), 2u);
  EXPECT_EQ(line_of("2 5 1\n0 x\n"), 2u);
  EXPECT_EQ(line_of("2 5\n"), 1u);
  EXPECT_EQ(line_of("2 5 2\n0 1\n"), 0u);
  EXPECT_EQ(line_of("2 5 1\n0 1\n2 3\n"), 3u);
  EXPECT_EQ(line_of("2 5 1\n3 3\n"), 2u);
  EXPECT_THROW(load_hypergraph("/nonexistent/file.hg"), InputError);
}
