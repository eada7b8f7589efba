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

#ifndef HGCOUNT_VERTEX_SET_HPP
#define HGCOUNT_VERTEX_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgcount {

using Vertex = std::uint32_t;

/// Raised for any precondition violation on caller-supplied data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subset of the vertex universe [0, n), stored as a dense bitset.
class VertexSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    const_iterator() = default;
    const_iterator(const std::uint64_t* words, std::size_t word_count, std::size_t word_index)
        : words_(words), word_count_(word_count), word_index_(word_index) {
      if (word_index_ < word_count_) {
        current_ = words_[word_index_];
        advance_to_set_bit();
      }
    }

    Vertex operator*() const {
      return static_cast<Vertex>(word_index_ * 64 + static_cast<std::size_t>(std::countr_zero(current_)));
    }

    const_iterator& operator++() {
      current_ &= current_ - 1;
      advance_to_set_bit();
      return *this;
    }

    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }

    bool operator==(const const_iterator& other) const {
      return word_index_ == other.word_index_ && current_ == other.current_;
    }

   private:
    void advance_to_set_bit() {
      while (current_ == 0) {
        if (++word_index_ >= word_count_) {
          word_index_ = word_count_;
          current_ = 0;
          return;
        }
        current_ = words_[word_index_];
      }
    }

    const std::uint64_t* words_ = nullptr;
    std::size_t word_count_ = 0;
    std::size_t word_index_ = 0;
    std::uint64_t current_ = 0;
  };

  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);
  VertexSet(std::size_t universe, std::span<const Vertex> members);

  static VertexSet full(std::size_t universe);
  /// Members lo, lo+1, ..., hi-1.
  static VertexSet range(std::size_t universe, Vertex lo, Vertex hi);

  std::size_t universe() const { return universe_; }

  bool contains(Vertex v) const { return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0; }

  void insert(Vertex v) {
    check_range(v);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }

  void erase(Vertex v) {
    check_range(v);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  /// Keeps the universe, drops every member.
  void clear();

  std::size_t size() const;
  bool empty() const;

  bool disjoint_with(const VertexSet& other) const;
  bool subset_of(const VertexSet& other) const;

  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator-=(const VertexSet& other);

  friend VertexSet operator&(VertexSet lhs, const VertexSet& rhs) { return lhs &= rhs; }
  friend VertexSet operator|(VertexSet lhs, const VertexSet& rhs) { return lhs |= rhs; }
  friend VertexSet operator-(VertexSet lhs, const VertexSet& rhs) { return lhs -= rhs; }

  bool operator==(const VertexSet& other) const = default;

  const_iterator begin() const { return {words_.data(), words_.size(), 0}; }
  const_iterator end() const { return {words_.data(), words_.size(), words_.size()}; }

  std::vector<Vertex> to_vector() const;

  /// Splits into the first ceil(size/2) members (ascending) and the rest.
  std::pair<VertexSet, VertexSet> split_halves() const;

  std::string to_string() const;

 private:
  void check_range(Vertex v) const {
    if (v >= universe_) {
      throw InputError("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(universe_));
    }
  }
  void check_same_universe(const VertexSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// True iff the sets in `sets` are pairwise disjoint.
bool pairwise_disjoint(std::span<const VertexSet> sets);

}  // namespace hgcount

#endif  // HGCOUNT_VERTEX_SET_HPP
