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

#include "respark/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace respark {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw InputError("graph needs at least one vertex");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      throw InputError("edge " + std::to_string(i) + ": vertex id out of range [0, " +
                       std::to_string(n_) + ")");
    }
    if (e.u == e.v) throw InputError("edge " + std::to_string(i) + ": self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InputError("edge " + std::to_string(i) + ": weight must be finite and > 0");
    }
  }
}

double WeightedGraph::max_weight() const {
  double best = 0.0;
  for (const Edge& e : edges_) best = std::max(best, e.weight);
  return best;
}

double WeightedGraph::min_weight() const {
  if (edges_.empty()) return 0.0;
  double best = edges_.front().weight;
  for (const Edge& e : edges_) best = std::min(best, e.weight);
  return best;
}

WeightedGraph WeightedGraph::prefix(std::size_t count) const {
  count = std::min(count, edges_.size());
  return WeightedGraph(n_, std::vector<Edge>(edges_.begin(), edges_.begin() + count));
}

WeightedGraph WeightedGraph::scaled(double factor) const {
  std::vector<Edge> out = edges_;
  for (Edge& e : out) e.weight *= factor;
  return WeightedGraph(n_, std::move(out));
}

Laplacian laplacian_of(int n, std::span<const Edge> edges) {
  Laplacian l{Eigen::MatrixXd::Zero(n, n)};
  for (const Edge& e : edges) {
    l.matrix(e.u, e.u) += e.weight;
    l.matrix(e.v, e.v) += e.weight;
    l.matrix(e.u, e.v) -= e.weight;
    l.matrix(e.v, e.u) -= e.weight;
  }
  return l;
}

Laplacian build_laplacian(const WeightedGraph& g) {
  if (g.num_edges() == 0) throw InputError("build_laplacian: graph has no edges");
  return laplacian_of(g.num_vertices(), g.edges());
}

Components connected_components(int n, std::span<const Edge> edges) {
  // Union-find with path halving.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : edges) {
    const int a = find(e.u);
    const int b = find(e.v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  Components c;
  c.label.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> root_label(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    if (root_label[r] < 0) root_label[r] = c.count++;
    c.label[v] = root_label[r];
  }
  return c;
}

Components connected_components(const WeightedGraph& g) {
  return connected_components(g.num_vertices(), g.edges());
}

bool is_connected(const WeightedGraph& g) { return connected_components(g).count == 1; }

double lambda_max_bound(const WeightedGraph& g) { return g.max_weight() * g.num_vertices(); }

double condition_kappa(const WeightedGraph& g) {
  if (g.num_edges() == 0) return 1.0;
  return std::sqrt(g.max_weight() / g.min_weight());
}

WeightedGraph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  int declared_n = -1;
  bool seen_content = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    auto fail = [&](const std::string& why) {
      throw InputError("edge list line " + std::to_string(line_no) + ": " + why);
    };
    if (!seen_content && line[first] == 'n') {
      std::string tag;
      long long count = 0;
      if (!(ls >> tag >> count) || tag != "n" || count < 1) fail("malformed 'n <count>' header");
      declared_n = static_cast<int>(count);
      seen_content = true;
      continue;
    }
    seen_content = true;
    long long u = 0;
    long long v = 0;
    double w = 0.0;
    // Extra columns (as in sparsifier files) are ignored.
    if (!(ls >> u >> v >> w)) fail("expected 'u v w'");
    if (u < 0 || v < 0) fail("negative vertex id");
    edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v), w});
  }
  int n = declared_n;
  if (n < 0) {
    Vertex max_id = -1;
    for (const Edge& e : edges) max_id = std::max({max_id, e.u, e.v});
    n = max_id + 1;
    if (n < 1) throw InputError("edge list is empty and declares no vertex count");
  }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "n " << g.num_vertices() << '\n';
  out << std::setprecision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
}

}  // namespace respark
