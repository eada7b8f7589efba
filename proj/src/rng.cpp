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

#include "hgcount/rng.hpp"

#include <cmath>

namespace hgcount {

VertexSet sample_subset(std::span<const Vertex> members, std::size_t universe, double p, Rng& rng) {
  VertexSet out(universe);
  if (p <= 0.0 || members.empty()) {
    return out;
  }
  if (p >= 1.0) {
    for (Vertex v : members) {
      out.insert(v);
    }
    return out;
  }
  // Jump straight to the next kept member: gaps between successes are
  // geometric with parameter p.
  std::geometric_distribution<std::size_t> gap(p);
  std::size_t i = gap(rng);
  while (i < members.size()) {
    out.insert(members[i]);
    i += 1 + gap(rng);
  }
  return out;
}

VertexSet sample_subset(const VertexSet& from, double p, Rng& rng) {
  const auto members = from.to_vector();
  return sample_subset(members, from.universe(), p, rng);
}

}  // namespace hgcount
