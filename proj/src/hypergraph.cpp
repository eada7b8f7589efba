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

#include "hgcount/hypergraph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>

#include "hgcount/math.hpp"

namespace hgcount {

namespace {

std::string edge_string(std::span<const Vertex> e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) {
    s += (i ? "," : "") + std::to_string(e[i]);
  }
  return s + "}";
}

void check_sets(const Hypergraph& h, std::span<const VertexSet> sets) {
  if (sets.size() != static_cast<std::size_t>(h.arity())) {
    throw InputError("expected " + std::to_string(h.arity()) + " vertex sets, got " + std::to_string(sets.size()));
  }
  for (const auto& s : sets) {
    if (s.universe() != h.vertex_count()) {
      throw InputError("vertex set universe " + std::to_string(s.universe()) + " does not match n=" +
                       std::to_string(h.vertex_count()));
    }
  }
}

std::size_t smallest_set(std::span<const VertexSet> sets, std::array<std::size_t, kMaxArity>& sizes) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    sizes[i] = sets[i].size();
    if (sizes[i] < sizes[best]) {
      best = i;
    }
  }
  return best;
}

// rows[q] holds the bitmask of edge slots k with edge[k] in sets[q]. Counts
// bijections position -> slot respecting rows, with `fixed_pos` pinned to
// `fixed_slot`.
template <bool kStopAtFirst>
std::uint64_t matchings(const std::array<std::uint8_t, kMaxArity>& rows, int d, int fixed_pos, int fixed_slot) {
  std::array<std::uint64_t, 1U << kMaxArity> dp{};
  std::array<std::uint64_t, 1U << kMaxArity> next{};
  const unsigned full = (1U << d) - 1;
  dp[1U << fixed_slot] = 1;
  for (int q = 0; q < d; ++q) {
    if (q == fixed_pos) {
      continue;
    }
    next.fill(0);
    bool any = false;
    for (unsigned mask = 0; mask <= full; ++mask) {
      if (dp[mask] == 0) {
        continue;
      }
      unsigned avail = rows[q] & ~mask & full;
      while (avail != 0) {
        const unsigned bit = avail & (~avail + 1);
        next[mask | bit] += dp[mask];
        any = true;
        avail &= avail - 1;
      }
    }
    if (!any) {
      return 0;
    }
    dp = next;
  }
  if constexpr (kStopAtFirst) {
    return dp[full] != 0 ? 1 : 0;
  }
  return dp[full];
}

template <bool kStopAtFirst>
std::uint64_t ordered_impl(const Hypergraph& h, std::span<const VertexSet> sets) {
  check_sets(h, sets);
  std::array<std::size_t, kMaxArity> sizes{};
  const std::size_t pivot = smallest_set(sets, sizes);
  if (sizes[pivot] == 0) {
    return 0;
  }
  const int d = h.arity();
  std::uint64_t total = 0;
  std::array<std::uint8_t, kMaxArity> rows{};
  for (Vertex v : sets[pivot]) {
    for (auto e : h.incident_edges(v)) {
      const auto edge = h.edge(e);
      int fixed_slot = 0;
      for (int k = 0; k < d; ++k) {
        if (edge[static_cast<std::size_t>(k)] == v) {
          fixed_slot = k;
        }
      }
      bool feasible = true;
      for (int q = 0; q < d && feasible; ++q) {
        std::uint8_t row = 0;
        for (int k = 0; k < d; ++k) {
          if (sets[static_cast<std::size_t>(q)].contains(edge[static_cast<std::size_t>(k)])) {
            row |= static_cast<std::uint8_t>(1U << k);
          }
        }
        rows[static_cast<std::size_t>(q)] = row;
        feasible = row != 0;
      }
      if (!feasible) {
        continue;
      }
      total += matchings<kStopAtFirst>(rows, d, static_cast<int>(pivot), fixed_slot);
      if (kStopAtFirst && total != 0) {
        return 1;
      }
    }
  }
  return total;
}

template <bool kStopAtFirst>
std::uint64_t colorful_impl(const Hypergraph& h, std::span<const VertexSet> sets) {
  check_sets(h, sets);
  if (!pairwise_disjoint(sets)) {
    throw InputError("colorful counting requires pairwise disjoint sets");
  }
  std::array<std::size_t, kMaxArity> sizes{};
  const std::size_t pivot = smallest_set(sets, sizes);
  if (sizes[pivot] == 0) {
    return 0;
  }
  const int d = h.arity();
  std::uint64_t total = 0;
  for (Vertex v : sets[pivot]) {
    for (auto e : h.incident_edges(v)) {
      unsigned seen = 0;
      bool ok = true;
      for (Vertex u : h.edge(e)) {
        int owner = -1;
        for (int q = 0; q < d; ++q) {
          if (sets[static_cast<std::size_t>(q)].contains(u)) {
            owner = q;
            break;
          }
        }
        if (owner < 0 || (seen & (1U << owner)) != 0) {
          ok = false;
          break;
        }
        seen |= 1U << owner;
      }
      if (ok) {
        ++total;
        if (kStopAtFirst) {
          return 1;
        }
      }
    }
  }
  return total;
}

template <bool kStopAtFirst>
std::uint64_t meeting_impl(const Hypergraph& h, std::span<const VertexSet> sets) {
  check_sets(h, sets);
  std::array<std::size_t, kMaxArity> sizes{};
  const std::size_t pivot = smallest_set(sets, sizes);
  if (sizes[pivot] == 0) {
    return 0;
  }
  std::vector<char> visited(h.edge_count(), 0);
  std::uint64_t total = 0;
  for (Vertex v : sets[pivot]) {
    for (auto e : h.incident_edges(v)) {
      if (visited[e] != 0) {
        continue;
      }
      visited[e] = 1;
      const auto edge = h.edge(e);
      const bool meets_all = std::all_of(sets.begin(), sets.end(), [&](const VertexSet& s) {
        return std::any_of(edge.begin(), edge.end(), [&](Vertex u) { return s.contains(u); });
      });
      if (meets_all) {
        ++total;
        if (kStopAtFirst) {
          return 1;
        }
      }
    }
  }
  return total;
}

}  // namespace

Hypergraph::Hypergraph(int d, std::size_t n, std::vector<std::vector<Vertex>> edges) : d_(d), n_(n) {
  if (d < kMinArity || d > kMaxArity) {
    throw InputError("arity d=" + std::to_string(d) + " outside supported range [2, 6]");
  }
  if (n < kMinVertices) {
    throw InputError("vertex count n=" + std::to_string(n) + " below minimum 4");
  }
  for (auto& e : edges) {
    if (e.size() != static_cast<std::size_t>(d)) {
      throw InputError("edge " + edge_string(e) + " has " + std::to_string(e.size()) + " vertices, expected " +
                       std::to_string(d));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InputError("edge " + edge_string(e) + " repeats a vertex");
    }
    if (e.back() >= n) {
      throw InputError("edge " + edge_string(e) + " has a vertex outside [0, " + std::to_string(n) + ")");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw InputError("duplicate edge " + edge_string(*dup));
  }
  edges_.reserve(edges.size() * static_cast<std::size_t>(d));
  for (const auto& e : edges) {
    edges_.insert(edges_.end(), e.begin(), e.end());
  }

  offsets_.assign(n + 1, 0);
  for (Vertex v : edges_) {
    ++offsets_[v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incidence_.resize(edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < edge_count(); ++i) {
    for (Vertex v : edge(i)) {
      incidence_[cursor[v]++] = static_cast<std::uint32_t>(i);
    }
  }
}

std::uint64_t Hypergraph::ordered_edge_count() const { return factorial(d_) * edge_count(); }

bool Hypergraph::has_edge(std::span<const Vertex> sorted_edge) const {
  if (sorted_edge.size() != static_cast<std::size_t>(d_)) {
    return false;
  }
  std::size_t lo = 0;
  std::size_t hi = edge_count();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto e = edge(mid);
    if (std::lexicographical_compare(e.begin(), e.end(), sorted_edge.begin(), sorted_edge.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < edge_count() && std::equal(sorted_edge.begin(), sorted_edge.end(), edge(lo).begin());
}

PartedTuple::PartedTuple(int d, std::vector<Part> parts) : d_(d), parts_(std::move(parts)) {
  if (parts_.empty()) {
    throw InputError("parted tuple needs at least one part");
  }
  int total = 0;
  for (const auto& p : parts_) {
    if (p.multiplicity < 1) {
      throw InputError("part multiplicity must be >= 1");
    }
    if (p.set.universe() != parts_.front().set.universe()) {
      throw InputError("parts over different universes");
    }
    total += p.multiplicity;
  }
  if (total != d) {
    throw InputError("part multiplicities sum to " + std::to_string(total) + ", expected " + std::to_string(d));
  }
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    for (std::size_t j = i + 1; j < parts_.size(); ++j) {
      if (!parts_[i].set.disjoint_with(parts_[j].set)) {
        throw InputError("parts " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
}

PartedTuple PartedTuple::whole(std::size_t n, int d) { return PartedTuple(d, {Part{VertexSet::full(n), d}}); }

PartedTuple PartedTuple::from_positions(std::span<const VertexSet> positions) {
  std::vector<Part> parts;
  for (const auto& s : positions) {
    auto same = std::find_if(parts.begin(), parts.end(), [&](const Part& p) { return p.set == s; });
    if (same != parts.end()) {
      ++same->multiplicity;
      continue;
    }
    for (const auto& p : parts) {
      if (!p.set.disjoint_with(s)) {
        throw InputError("positions must be pairwise equal or disjoint");
      }
    }
    parts.push_back(Part{s, 1});
  }
  return PartedTuple(static_cast<int>(positions.size()), std::move(parts));
}

std::vector<VertexSet> PartedTuple::positions() const {
  std::vector<VertexSet> out;
  out.reserve(static_cast<std::size_t>(d_));
  for (const auto& p : parts_) {
    for (int i = 0; i < p.multiplicity; ++i) {
      out.push_back(p.set);
    }
  }
  return out;
}

VertexSet PartedTuple::support() const {
  VertexSet s(universe());
  for (const auto& p : parts_) {
    s |= p.set;
  }
  return s;
}

bool PartedTuple::all_singletons() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const Part& p) { return p.multiplicity == 1 && p.set.size() == 1; });
}

double PartedTuple::position_volume() const {
  double v = 1.0;
  for (const auto& p : parts_) {
    v *= ipow(static_cast<double>(p.set.size()), p.multiplicity);
  }
  return v;
}

std::uint64_t count_colorful(const Hypergraph& h, std::span<const VertexSet> sets) {
  return colorful_impl<false>(h, sets);
}
bool any_colorful(const Hypergraph& h, std::span<const VertexSet> sets) { return colorful_impl<true>(h, sets) != 0; }

std::uint64_t count_meeting(const Hypergraph& h, std::span<const VertexSet> sets) {
  return meeting_impl<false>(h, sets);
}
bool any_meeting(const Hypergraph& h, std::span<const VertexSet> sets) { return meeting_impl<true>(h, sets) != 0; }

std::uint64_t count_ordered(const Hypergraph& h, std::span<const VertexSet> sets) {
  return ordered_impl<false>(h, sets);
}
bool any_ordered(const Hypergraph& h, std::span<const VertexSet> sets) { return ordered_impl<true>(h, sets) != 0; }

std::uint64_t count_ordered(const Hypergraph& h, const PartedTuple& t) {
  const auto positions = t.positions();
  return count_ordered(h, positions);
}

std::size_t BucketProfile::bucket_size(std::size_t level, int q) const {
  const auto& buckets = levels.at(level);
  auto it = buckets.find(q);
  return it == buckets.end() ? 0 : it->second.size();
}

std::size_t BucketProfile::contributing(std::size_t level) const {
  std::size_t total = 0;
  for (const auto& [q, members] : levels.at(level)) {
    total += members.size();
  }
  return total;
}

std::vector<std::uint64_t> continuation_counts(const Hypergraph& h, std::span<const Vertex> prefix) {
  const auto d = static_cast<std::size_t>(h.arity());
  const std::size_t n = h.vertex_count();
  if (prefix.size() >= d) {
    throw InputError("prefix of length " + std::to_string(prefix.size()) + " leaves no free position");
  }
  std::vector<VertexSet> sets;
  sets.reserve(d);
  for (Vertex a : prefix) {
    sets.emplace_back(n, std::initializer_list<Vertex>{a});
  }
  sets.emplace_back(n);
  while (sets.size() < d) {
    sets.push_back(VertexSet::full(n));
  }
  std::vector<std::uint64_t> counts(n, 0);
  VertexSet& slot = sets[prefix.size()];
  for (Vertex u = 0; u < n; ++u) {
    slot.clear();
    slot.insert(u);
    counts[u] = count_ordered(h, sets);
  }
  return counts;
}

BucketProfile bucket_profile(const Hypergraph& h, std::span<const ChainStep> prefix) {
  if (prefix.size() + 1 > static_cast<std::size_t>(h.arity())) {
    throw InputError("bucket prefix longer than d-1");
  }
  const std::size_t n = h.vertex_count();
  BucketProfile profile;
  std::vector<Vertex> chosen;
  for (std::size_t level = 0; level <= prefix.size(); ++level) {
    const auto counts = continuation_counts(h, chosen);
    std::map<int, VertexSet> buckets;
    for (Vertex u = 0; u < n; ++u) {
      if (counts[u] == 0) {
        continue;
      }
      const int q = static_cast<int>(std::bit_width(counts[u])) - 1;
      buckets.try_emplace(q, n).first->second.insert(u);
    }
    if (level < prefix.size()) {
      const auto& step = prefix[level];
      auto it = buckets.find(step.q);
      if (step.vertex >= n || it == buckets.end() || !it->second.contains(step.vertex)) {
        throw InputError("prefix vertex " + std::to_string(step.vertex) + " is not in bucket " +
                         std::to_string(step.q) + " at level " + std::to_string(level + 1));
      }
      chosen.push_back(step.vertex);
    }
    profile.levels.push_back(std::move(buckets));
  }
  return profile;
}

}  // namespace hgcount
