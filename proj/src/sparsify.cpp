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

#include "hgcount/sparsify.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace hgcount {

bool ColoringScheme::hash(std::span<const int> color_vector) const {
  if (color_vector.size() != static_cast<std::size_t>(d)) {
    throw InputError("color vector has the wrong length");
  }
  std::size_t index = 0;
  for (int c : color_vector) {
    if (c < 0 || c >= k) {
      throw InputError("color " + std::to_string(c) + " outside [0, " + std::to_string(k) + ")");
    }
    index = index * static_cast<std::size_t>(k) + static_cast<std::size_t>(c);
  }
  return table[index] != 0;
}

std::vector<std::uint8_t> build_hash(int k, int d, Rng& rng) {
  if (k < 1 || d < 1) {
    throw InputError("hash needs k >= 1 and d >= 1");
  }
  std::size_t entries = 1;
  for (int i = 0; i < d; ++i) {
    entries *= static_cast<std::size_t>(k);
    if (entries > kMaxHashEntries) {
      throw InputError("hash table k^d exceeds " + std::to_string(kMaxHashEntries) + " entries");
    }
  }
  std::vector<std::uint8_t> table(entries, 1);
  if (k == 1) {
    return table;
  }
  std::bernoulli_distribution coin(1.0 / k);
  for (auto& entry : table) {
    entry = coin(rng) ? 1 : 0;
  }
  return table;
}

std::vector<WeightedTuple> sparsify(const WeightedTuple& t, int k, Rng& rng, ColoringScheme* scheme) {
  const int d = t.tuple.arity();
  const std::size_t n = t.tuple.universe();
  ColoringScheme local;
  ColoringScheme& s = scheme != nullptr ? *scheme : local;
  s.k = k;
  s.d = d;
  s.table = build_hash(k, d, rng);
  s.colors.assign(n, 0);
  std::uniform_int_distribution<int> pick(0, k - 1);
  const auto support = t.tuple.support();
  for (Vertex v : support) {
    s.colors[v] = static_cast<std::uint8_t>(k == 1 ? 0 : pick(rng));
  }

  const auto positions = t.tuple.positions();
  const auto ku = static_cast<std::size_t>(k);
  // classes[i][c]: members of position i with color c.
  std::vector<std::vector<VertexSet>> classes(positions.size(), std::vector<VertexSet>(ku, VertexSet(n)));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (Vertex v : positions[i]) {
      classes[i][s.colors[v]].insert(v);
    }
  }

  std::vector<WeightedTuple> out;
  std::vector<int> c(positions.size(), 0);
  std::vector<VertexSet> child(positions.size());
  for (std::size_t index = 0; index < s.table.size(); ++index) {
    std::size_t rest = index;
    for (std::size_t i = positions.size(); i-- > 0;) {
      c[i] = static_cast<int>(rest % ku);
      rest /= ku;
    }
    if (s.table[index] == 0) {
      continue;
    }
    bool trivial = false;
    for (std::size_t i = 0; i < positions.size() && !trivial; ++i) {
      child[i] = classes[i][static_cast<std::size_t>(c[i])];
      trivial = child[i].empty();
    }
    if (trivial) {
      continue;
    }
    auto parted = PartedTuple::from_positions(child);
    const bool starved = std::any_of(parted.parts().begin(), parted.parts().end(), [](const Part& p) {
      return p.set.size() < static_cast<std::size_t>(p.multiplicity);
    });
    if (starved) {
      continue;
    }
    out.push_back(WeightedTuple{std::move(parted), t.weight * k, t.sparsify_rounds + 1, t.rescale});
  }
  return out;
}

}  // namespace hgcount
