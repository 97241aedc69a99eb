// Copyright 2026 The respark Authors.
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

#ifndef RESPARK_GRAPH_HPP
#define RESPARK_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace respark {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

/// Thrown for malformed graphs, files and out-of-range parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a query needs a connected graph (or same-component endpoints).
class ConnectivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted multigraph on vertices [0, n). The edge list is the
/// stream order; parallel edges stay distinct stream items.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Throws InputError on self-loops, non-positive / non-finite weights or
  /// out-of-range vertex ids.
  WeightedGraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }

  double max_weight() const;
  double min_weight() const;

  /// Graph on the same vertex set holding only edges [0, count).
  WeightedGraph prefix(std::size_t count) const;
  /// Same edges with every weight multiplied by `factor`.
  WeightedGraph scaled(double factor) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

struct Laplacian {
  Eigen::MatrixXd matrix;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// Weighted Laplacian D - A; parallel edges add. Requires at least one edge.
Laplacian build_laplacian(const WeightedGraph& g);

/// Laplacian of an arbitrary weighted edge list on n vertices (zero edges
/// allowed, yielding the zero matrix).
Laplacian laplacian_of(int n, std::span<const Edge> edges);

/// Component label per vertex, labels dense in [0, count).
struct Components {
  std::vector<int> label;
  int count = 0;
};

Components connected_components(int n, std::span<const Edge> edges);
Components connected_components(const WeightedGraph& g);

bool is_connected(const WeightedGraph& g);

/// a_max * n, an upper bound on lambda_max(L_G) (the complete graph with
/// every weight raised to a_max dominates G in Loewner order).
double lambda_max_bound(const WeightedGraph& g);

/// kappa = sqrt(a_max / a_min).
double condition_kappa(const WeightedGraph& g);

// Edge-list text format: "u v w" per line, '#' comments, blank lines
// ignored, optional leading "n <count>" line.
WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const WeightedGraph& g);

}  // namespace respark

#endif  // RESPARK_GRAPH_HPP
