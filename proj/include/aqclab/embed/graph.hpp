// Copyright 2026 The aqclab Authors
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

#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "aqclab/core/common.hpp"
#include "aqclab/core/random.hpp"
#include "aqclab/problem/ising.hpp"

namespace aqc {

/// Simple undirected graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {
    if (n < 0) throw InvalidArgument("vertex count must be non-negative");
  }

  int size() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbours(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(int v) const { return static_cast<int>(neighbours(v).size()); }

  bool has_edge(int u, int v) const {
    const auto& a = neighbours(u);
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Ignores duplicates; rejects loops and out-of-range endpoints.
  void add_edge(int u, int v) {
    if (u == v) throw InvalidArgument("self-loops are not allowed");
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw InvalidArgument("edge endpoint out of range");
    if (has_edge(u, v)) return;
    auto insert = [](std::vector<int>& a, int x) { a.insert(std::upper_bound(a.begin(), a.end(), x), x); };
    insert(adj_[static_cast<std::size_t>(u)], v);
    insert(adj_[static_cast<std::size_t>(v)], u);
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < size(); ++u)
      for (int v : neighbours(u))
        if (u < v) e.emplace_back(u, v);
    return e;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& a : adj_) m += a.size();
    return m / 2;
  }

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  /// Interaction graph of the nonzero couplings.
  static Graph from_instance(const IsingInstance& inst) { return from_edges(inst.n, inst.edges()); }

 private:
  std::vector<std::vector<int>> adj_;
};

/// Chimera C(r, c): r x c unit cells of K_{4,4}. Vertex index
/// (row * c + col) * 8 + k; k in 0..3 is the left partition, coupled to the
/// same k in the cells above and below; k in 4..7 is the right partition,
/// coupled to the same k in the cells left and right.
class ChimeraGraph : public Graph {
 public:
  ChimeraGraph(int rows, int cols) : Graph(checked(rows, cols)), rows_(rows), cols_(cols) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        for (int a = 0; a < 4; ++a)
          for (int b = 4; b < 8; ++b) add_edge(vertex(r, c, a), vertex(r, c, b));
        for (int k = 0; k < 4; ++k) {
          if (r + 1 < rows) add_edge(vertex(r, c, k), vertex(r + 1, c, k));
          if (c + 1 < cols) add_edge(vertex(r, c, 4 + k), vertex(r, c + 1, 4 + k));
        }
      }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int vertex(int row, int col, int k) const { return (row * cols_ + col) * 8 + k; }

  struct Coordinate {
    int row, col, k;
  };
  Coordinate coordinate(int v) const { return {v / 8 / cols_, v / 8 % cols_, v % 8}; }

  static std::size_t expected_edge_count(int rows, int cols) {
    return static_cast<std::size_t>(16 * rows * cols + 4 * (rows - 1) * cols + 4 * rows * (cols - 1));
  }

 private:
  static int checked(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InvalidArgument("Chimera needs rows, cols >= 1");
    if (rows > 64 || cols > 64) throw BudgetExceeded("Chimera limited to 64 x 64 cells");
    return 8 * rows * cols;
  }

  int rows_ = 0;
  int cols_ = 0;
};

inline ChimeraGraph build_chimera(int rows, int cols) { return ChimeraGraph(rows, cols); }

/// Erdos-Renyi G(n, p).
inline Graph random_graph(int n, double p, Rng& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (bernoulli(rng, p)) g.add_edge(u, v);
  return g;
}

// Edge-list text:
//   # comment
//   vertices N
//   u v
//   ...

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "vertices " << g.size() << "\n";
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << "\n";
  return os.str();
}

inline Graph parse_edge_list(std::istream& in) {
  std::string raw;
  int line = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  auto fail = [&](const std::string& what) {
    throw InvalidArgument("edge list line " + std::to_string(line) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "vertices") {
      if (n >= 0) fail("vertex count given twice");
      if (!(ls >> n) || n < 0) fail("expected 'vertices N'");
    } else {
      if (n < 0) fail("expected 'vertices N' before edges");
      int u = 0, v = 0;
      try {
        std::size_t used = 0;
        u = std::stoi(first, &used);
        if (used != first.size()) fail("bad vertex '" + first + "'");
      } catch (const std::logic_error&) {
        fail("bad vertex '" + first + "'");
      }
      if (!(ls >> v)) fail("expected two endpoints");
      if (u < 0 || v < 0 || u >= n || v >= n) fail("endpoint out of range");
      if (u == v) fail("self-loop");
      edges.emplace_back(u, v);
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
  }
  if (n < 0) throw InvalidArgument("edge list has no 'vertices N' line");
  return Graph::from_edges(n, edges);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open edge list " + path);
  return parse_edge_list(in);
}

}  // namespace aqc
