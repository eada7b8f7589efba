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

#include "hgcount/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "hgcount/math.hpp"
#include "hgcount/rng.hpp"

namespace hgcount {

namespace {

constexpr std::uint64_t kEnumerateLimit = 4'000'000;

void check_shape(std::size_t n, int d) {
  if (d < kMinArity || d > kMaxArity) {
    throw InputError("arity d=" + std::to_string(d) + " outside supported range [2, 6]");
  }
  if (n < kMinVertices) {
    throw InputError("vertex count n=" + std::to_string(n) + " below minimum 4");
  }
}

void check_capacity(std::uint64_t available, std::size_t m) {
  if (m > available) {
    throw InputError("cannot place " + std::to_string(m) + " distinct edges; only " + std::to_string(available) +
                     " candidates exist");
  }
}

// Calls f on every ascending k-subset of {lo, ..., n-1}.
template <typename F>
void for_each_subset(std::size_t n, int k, Vertex lo, F&& f) {
  std::vector<Vertex> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), lo);
  if (k == 0) {
    f(c);
    return;
  }
  if (lo + static_cast<std::size_t>(k) > n) {
    return;
  }
  while (true) {
    f(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - static_cast<std::size_t>(k - i)) {
      --i;
    }
    if (i < 0) {
      return;
    }
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// Uniform m-subset of the k-subsets of {lo..n-1}, each extended by `fixed`.
std::vector<std::vector<Vertex>> sample_subsets(std::size_t n, int k, Vertex lo, std::size_t m,
                                                const std::vector<Vertex>& fixed, Rng& rng) {
  const std::uint64_t available = binomial(n - lo, static_cast<std::uint64_t>(k));
  check_capacity(available, m);
  std::vector<std::vector<Vertex>> edges;
  edges.reserve(m);
  if (available <= kEnumerateLimit && 2 * m > available) {
    for_each_subset(n, k, lo, [&](const std::vector<Vertex>& c) {
      auto e = fixed;
      e.insert(e.end(), c.begin(), c.end());
      edges.push_back(std::move(e));
    });
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(m);
    return edges;
  }
  std::uniform_int_distribution<Vertex> pick(lo, static_cast<Vertex>(n - 1));
  std::set<std::vector<Vertex>> seen;
  while (edges.size() < m) {
    std::vector<Vertex> c;
    while (c.size() < static_cast<std::size_t>(k)) {
      const Vertex v = pick(rng);
      if (std::find(c.begin(), c.end(), v) == c.end()) {
        c.push_back(v);
      }
    }
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) {
      auto e = fixed;
      e.insert(e.end(), c.begin(), c.end());
      edges.push_back(std::move(e));
    }
  }
  return edges;
}

}  // namespace

Hypergraph generate_random(std::size_t n, int d, std::size_t m, std::uint64_t seed) {
  check_shape(n, d);
  auto rng = make_rng(seed, StreamTag::kGenerator, 0);
  return Hypergraph(d, n, sample_subsets(n, d, 0, m, {}, rng));
}

Hypergraph generate_skewed(std::size_t n, int d, std::size_t m, double skew, std::uint64_t seed) {
  check_shape(n, d);
  if (!(skew >= 0.0) || !std::isfinite(skew)) {
    throw InputError("skew must be a finite non-negative number");
  }
  check_capacity(binomial(n, static_cast<std::uint64_t>(d)), m);
  auto rng = make_rng(seed, StreamTag::kGenerator, 1);
  std::vector<double> weights(n);
  for (std::size_t v = 0; v < n; ++v) {
    weights[v] = std::pow(static_cast<double>(v + 1), -skew);
  }
  std::discrete_distribution<Vertex> pick(weights.begin(), weights.end());
  std::set<std::vector<Vertex>> seen;
  const std::size_t max_attempts = 50 * m + 1000;
  for (std::size_t attempt = 0; attempt < max_attempts && seen.size() < m; ++attempt) {
    std::vector<Vertex> e;
    int tries = 0;
    while (e.size() < static_cast<std::size_t>(d) && tries < 64 * d) {
      const Vertex v = pick(rng);
      if (std::find(e.begin(), e.end(), v) == e.end()) {
        e.push_back(v);
      }
      ++tries;
    }
    if (e.size() == static_cast<std::size_t>(d)) {
      std::sort(e.begin(), e.end());
      seen.insert(std::move(e));
    }
  }
  if (seen.size() < m) {
    std::uniform_int_distribution<Vertex> uniform(0, static_cast<Vertex>(n - 1));
    const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(d));
    if (total <= kEnumerateLimit && 2 * m > total) {
      std::vector<std::vector<Vertex>> rest;
      for_each_subset(n, d, 0, [&](const std::vector<Vertex>& c) {
        if (!seen.contains(c)) {
          rest.push_back(c);
        }
      });
      std::shuffle(rest.begin(), rest.end(), rng);
      for (std::size_t i = 0; seen.size() < m; ++i) {
        seen.insert(rest[i]);
      }
    } else {
      while (seen.size() < m) {
        std::vector<Vertex> e;
        while (e.size() < static_cast<std::size_t>(d)) {
          const Vertex v = uniform(rng);
          if (std::find(e.begin(), e.end(), v) == e.end()) {
            e.push_back(v);
          }
        }
        std::sort(e.begin(), e.end());
        seen.insert(std::move(e));
      }
    }
  }
  return Hypergraph(d, n, {seen.begin(), seen.end()});
}

Hypergraph complete(std::size_t n, int d) {
  check_shape(n, d);
  const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(d));
  if (total > kEnumerateLimit) {
    throw InputError("complete hypergraph with " + std::to_string(total) + " edges is too large");
  }
  std::vector<std::vector<Vertex>> edges;
  edges.reserve(total);
  for_each_subset(n, d, 0, [&](const std::vector<Vertex>& c) { edges.push_back(c); });
  return Hypergraph(d, n, std::move(edges));
}

Hypergraph star(std::size_t n, int d, std::size_t m, std::uint64_t seed) {
  check_shape(n, d);
  auto rng = make_rng(seed, StreamTag::kGenerator, 2);
  return Hypergraph(d, n, sample_subsets(n, d - 1, 1, m, {0}, rng));
}

}  // namespace hgcount
