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

#ifndef HGCOUNT_HYPERGRAPH_HPP
#define HGCOUNT_HYPERGRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hgcount/vertex_set.hpp"

namespace hgcount {

inline constexpr int kMinArity = 2;
inline constexpr int kMaxArity = 6;
inline constexpr std::size_t kMinVertices = 4;

/// An immutable d-uniform hypergraph on vertices 0..n-1.
///
/// Edges are stored in canonical form (ascending vertex ids) and sorted
/// lexicographically, so two hypergraphs with the same edge set compare equal
/// regardless of input order. A per-vertex incidence index backs the counting
/// routines below.
class Hypergraph {
 public:
  /// Throws InputError on arity outside [2, 6], n < 4, a malformed edge
  /// (wrong size, repeated or out-of-range vertex) or a duplicate edge.
  Hypergraph(int d, std::size_t n, std::vector<std::vector<Vertex>> edges);

  int arity() const { return d_; }
  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size() / static_cast<std::size_t>(d_); }
  /// d! * m, the number of ordered hyperedges.
  std::uint64_t ordered_edge_count() const;

  std::span<const Vertex> edge(std::size_t index) const {
    return {edges_.data() + index * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }

  std::span<const std::uint32_t> incident_edges(Vertex v) const {
    return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// `sorted_edge` must be ascending.
  bool has_edge(std::span<const Vertex> sorted_edge) const;

  bool operator==(const Hypergraph& other) const { return d_ == other.d_ && n_ == other.n_ && edges_ == other.edges_; }

 private:
  int d_;
  std::size_t n_;
  std::vector<Vertex> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> incidence_;
};

struct Part {
  VertexSet set;
  int multiplicity = 1;
};

/// A[1]^{a_1}, ..., A[s]^{a_s}: pairwise disjoint parts with multiplicities
/// summing to d. Positions are the parts expanded in order, so part i
/// occupies a_i consecutive positions.
class PartedTuple {
 public:
  /// Throws InputError unless multiplicities are >= 1 and sum to d and the
  /// parts are pairwise disjoint over one universe.
  PartedTuple(int d, std::vector<Part> parts);

  /// U^{[d]} over [0, n).
  static PartedTuple whole(std::size_t n, int d);

  /// Merges equal positions into one part. Positions must be pairwise equal
  /// or disjoint.
  static PartedTuple from_positions(std::span<const VertexSet> positions);

  int arity() const { return d_; }
  const std::vector<Part>& parts() const { return parts_; }
  std::size_t universe() const { return parts_.front().set.universe(); }

  std::vector<VertexSet> positions() const;
  VertexSet support() const;
  bool all_singletons() const;
  /// Product of position sizes; an upper bound on m_o of the tuple.
  double position_volume() const;

 private:
  int d_;
  std::vector<Part> parts_;
};

/// Hyperedges with exactly one vertex in each of the pairwise disjoint sets.
/// Throws InputError when two sets overlap.
std::uint64_t count_colorful(const Hypergraph& h, std::span<const VertexSet> sets);
bool any_colorful(const Hypergraph& h, std::span<const VertexSet> sets);

/// Hyperedges F with F meeting every set (a vertex may serve several sets).
std::uint64_t count_meeting(const Hypergraph& h, std::span<const VertexSet> sets);
bool any_meeting(const Hypergraph& h, std::span<const VertexSet> sets);

/// Ordered d-tuples of distinct vertices (x_1..x_d) forming an edge with
/// x_i in sets[i].
std::uint64_t count_ordered(const Hypergraph& h, std::span<const VertexSet> sets);
bool any_ordered(const Hypergraph& h, std::span<const VertexSet> sets);

/// m_o of a parted tuple.
std::uint64_t count_ordered(const Hypergraph& h, const PartedTuple& t);

/// One level of a chain prefix: vertex `vertex` taken from bucket `q`.
struct ChainStep {
  int q = 0;
  Vertex vertex = 0;
};

/// Bucket membership per level. Level i (0-based) groups vertices u by the
/// number of ordered hyperedges whose first i vertices are the prefix
/// vertices and whose (i+1)-th vertex is u: u lands in bucket q iff that
/// count lies in [2^q, 2^{q+1} - 1]. Vertices with count zero are in no bucket.
struct BucketProfile {
  std::vector<std::map<int, VertexSet>> levels;

  std::size_t bucket_size(std::size_t level, int q) const;
  /// Vertices with positive count at `level`.
  std::size_t contributing(std::size_t level) const;
};

/// Continuation counts c(u) = m_o({a_1}, ..., {a_k}, {u}, U, ..., U) for all u.
std::vector<std::uint64_t> continuation_counts(const Hypergraph& h, std::span<const Vertex> prefix);

/// Builds levels 0..prefix.size(). Throws InputError if the prefix is longer
/// than d-1 or some prefix vertex is not in its claimed bucket.
BucketProfile bucket_profile(const Hypergraph& h, std::span<const ChainStep> prefix);

}  // namespace hgcount

#endif  // HGCOUNT_HYPERGRAPH_HPP
