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

#include "hgcount/hypergraph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace hgcount {

ParseError::ParseError(std::size_t line, const std::string& what)
    : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::uint64_t> parse_numbers(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    if (i == line.size()) {
      break;
    }
    std::uint64_t value = 0;
    const auto* first = line.data() + i;
    const auto* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || (ptr != last && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
      throw ParseError(line_no, "expected a non-negative integer, found '" +
                                    std::string(line.substr(i, line.find_first_of(" \t\r", i) - i)) + "'");
    }
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

bool skippable(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<std::vector<Vertex>> edges;
  std::vector<std::size_t> edge_lines;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    ++line_no;
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (skippable(line)) {
      continue;
    }
    const auto numbers = parse_numbers(line, line_no);
    if (!have_header) {
      if (numbers.size() != 3) {
        throw ParseError(line_no, "header must be 'd n m'");
      }
      d = numbers[0];
      n = numbers[1];
      m = numbers[2];
      if (d < kMinArity || d > kMaxArity) {
        throw ParseError(line_no, "arity " + std::to_string(d) + " outside [2, 6]");
      }
      if (n < kMinVertices || n > (std::uint64_t{1} << 31)) {
        throw ParseError(line_no, "vertex count " + std::to_string(n) + " out of range");
      }
      have_header = true;
      continue;
    }
    if (edges.size() == m) {
      throw ParseError(line_no, "more edge lines than the header's m=" + std::to_string(m));
    }
    if (numbers.size() != d) {
      throw ParseError(line_no, "edge has " + std::to_string(numbers.size()) + " ids, expected " + std::to_string(d));
    }
    std::vector<Vertex> e;
    for (auto v : numbers) {
      if (v >= n) {
        throw ParseError(line_no, "vertex " + std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
      }
      e.push_back(static_cast<Vertex>(v));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw ParseError(line_no, "edge repeats a vertex");
    }
    edges.push_back(std::move(e));
    edge_lines.push_back(line_no);
  }
  if (!have_header) {
    throw ParseError(0, "missing header line 'd n m'");
  }
  if (edges.size() != m) {
    throw ParseError(0, "header promises " + std::to_string(m) + " edges but " + std::to_string(edges.size()) +
                            " were given");
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      throw ParseError(std::max(edge_lines[order[i]], edge_lines[order[i - 1]]), "duplicate edge");
    }
  }
  return Hypergraph(static_cast<int>(d), static_cast<std::size_t>(n), std::move(edges));
}

Hypergraph load_hypergraph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_hypergraph(buffer.str());
}

void write_hypergraph(const Hypergraph& h, std::ostream& out) {
  out << h.arity() << ' ' << h.vertex_count() << ' ' << h.edge_count() << '\n';
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto e = h.edge(i);
    for (std::size_t k = 0; k < e.size(); ++k) {
      out << (k ? " " : "") << e[k];
    }
    out << '\n';
  }
}

void store_hypergraph(const Hypergraph& h, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InputError("cannot write " + path.string());
  }
  write_hypergraph(h, out);
  if (!out) {
    throw InputError("write failed for " + path.string());
  }
}

}  // namespace hgcount
