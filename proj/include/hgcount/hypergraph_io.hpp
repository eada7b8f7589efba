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

#ifndef HGCOUNT_HYPERGRAPH_IO_HPP
#define HGCOUNT_HYPERGRAPH_IO_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "hgcount/hypergraph.hpp"

namespace hgcount {

/// Malformed .hg input. `line()` is 1-based; 0 means the problem is not tied
/// to a single line (for example a missing edge at end of file).
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The .hg text format: a header line "d n m" followed by m lines of d
// whitespace-separated vertex ids. Blank lines and lines starting with '#'
// are ignored.

Hypergraph parse_hypergraph(std::string_view text);
Hypergraph load_hypergraph(const std::filesystem::path& path);
void write_hypergraph(const Hypergraph& h, std::ostream& out);
void store_hypergraph(const Hypergraph& h, const std::filesystem::path& path);

}  // namespace hgcount

#endif  // HGCOUNT_HYPERGRAPH_IO_HPP
