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

#include "hgcount/vertex_set.hpp"

#include <algorithm>
#include <sstream>

namespace hgcount {

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) {
    insert(v);
  }
}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) {
    insert(v);
  }
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  if (const auto tail = universe & 63; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

VertexSet VertexSet::range(std::size_t universe, Vertex lo, Vertex hi) {
  if (lo > hi || hi > universe) {
    throw InputError("invalid vertex range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  VertexSet s(universe);
  for (Vertex v = lo; v < hi; ++v) {
    s.insert(v);
  }
  return s;
}

void VertexSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::size_t VertexSet::size() const {
  std::size_t total = 0;
  for (auto w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void VertexSet::check_same_universe(const VertexSet& other) const {
  if (universe_ != other.universe_) {
    throw InputError("vertex sets over different universes (" + std::to_string(universe_) + " vs " +
                     std::to_string(other.universe_) + ")");
  }
}

bool VertexSet::disjoint_with(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) {
      return false;
    }
  }
  return true;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) {
      return false;
    }
  }
  return true;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= other.words_[i];
  }
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] |= other.words_[i];
  }
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  check_same_universe(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= ~other.words_[i];
  }
  return *this;
}

std::vector<Vertex> VertexSet::to_vector() const { return {begin(), end()}; }

std::pair<VertexSet, VertexSet> VertexSet::split_halves() const {
  VertexSet first(universe_);
  VertexSet second(universe_);
  const std::size_t keep = (size() + 1) / 2;
  std::size_t taken = 0;
  for (Vertex v : *this) {
    if (taken < keep) {
      first.insert(v);
      ++taken;
    } else {
      second.insert(v);
    }
  }
  return {std::move(first), std::move(second)};
}

std::string VertexSet::to_string() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Vertex v : *this) {
    out << (first ? "" : ",") << v;
    first = false;
  }
  out << '}';
  return out.str();
}

bool pairwise_disjoint(std::span<const VertexSet> sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (!sets[i].disjoint_with(sets[j])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace hgcount
