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

#include "respark/generators.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace respark {

std::string to_string(GraphModel model) {
  switch (model) {
    case GraphModel::kPath:
      return "path";
    case GraphModel::kCycle:
      return "cycle";
    case GraphModel::kComplete:
      return "complete";
    case GraphModel::kErdosRenyi:
      return "erdos-renyi";
    case GraphModel::kBarbell:
      return "barbell";
  }
  return "path";
}

GraphModel parse_graph_model(const std::string& text) {
  if (text == "path") return GraphModel::kPath;
  if (text == "cycle") return GraphModel::kCycle;
  if (text == "complete") return GraphModel::kComplete;
  if (text == "erdos-renyi" || text == "er") return GraphModel::kErdosRenyi;
  if (text == "barbell") return GraphModel::kBarbell;
  throw InputError("unknown graph model '" + text +
                   "' (path|cycle|complete|erdos-renyi|barbell)");
}

namespace {

// mt19937_64 output mapped by hand: the std distributions differ between
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

using Pairs = std::vector<std::pair<Vertex, Vertex>>;

void clique(Pairs& out, Vertex first, Vertex last) {
  for (Vertex i = first; i < last; ++i) {
    for (Vertex j = i + 1; j < last; ++j) out.emplace_back(i, j);
  }
}

Pairs erdos_renyi_pairs(int n, double p, Rng& rng) {
  Pairs out;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) out.emplace_back(i, j);
    }
  }
  for (std::size_t k = out.size(); k > 1; --k) {
    std::swap(out[k - 1], out[rng.below(k)]);
  }
  return out;
}

std::vector<Edge> with_weights(const Pairs& pairs, const GeneratorSpec& spec, Rng& rng) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    const double w =
        spec.a_min == spec.a_max ? spec.a_min : spec.a_min + (spec.a_max - spec.a_min) * rng.uniform();
    edges.push_back({u, v, w});
  }
  return edges;
}

}  // namespace

GeneratedGraph generate_with_info(const GeneratorSpec& spec) {
  if (spec.n < 2) throw InputError("generator needs n >= 2");
  if (spec.model == GraphModel::kCycle && spec.n < 3) throw InputError("cycle needs n >= 3");
  if (!(spec.a_min > 0.0) || !(spec.a_max >= spec.a_min) || !std::isfinite(spec.a_max)) {
    throw InputError("weight range must satisfy 0 < a_min <= a_max < inf");
  }
  if (spec.model == GraphModel::kErdosRenyi && !(spec.p > 0.0 && spec.p <= 1.0)) {
    throw InputError("Erdos-Renyi edge probability must lie in (0, 1]");
  }

  Rng rng(spec.seed);
  GeneratedGraph out;
  Pairs pairs;
  const int n = spec.n;
  switch (spec.model) {
    case GraphModel::kPath:
      for (Vertex i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      break;
    case GraphModel::kCycle:
      for (Vertex i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      pairs.emplace_back(0, n - 1);
      break;
    case GraphModel::kComplete:
      clique(pairs, 0, n);
      break;
    case GraphModel::kBarbell: {
      const Vertex split = n / 2;
      clique(pairs, 0, split);
      clique(pairs, split, n);
      pairs.emplace_back(split - 1, split);
      break;
    }
    case GraphModel::kErdosRenyi: {
      for (int attempt = 0;; ++attempt) {
        pairs = erdos_renyi_pairs(n, spec.p, rng);
        std::vector<Edge> probe;
        for (const auto& [u, v] : pairs) probe.push_back({u, v, 1.0});
        const Components comps = connected_components(n, probe);
        if (comps.count == 1) break;
        if (attempt + 1 >= kMaxRedraws) {
          std::vector<Vertex> rep(static_cast<std::size_t>(comps.count), -1);
          for (Vertex v = 0; v < n; ++v) {
            if (rep[comps.label[v]] < 0) rep[comps.label[v]] = v;
          }
          for (std::size_t c = 1; c < rep.size(); ++c) {
            pairs.emplace_back(rep[c - 1], rep[c]);
            ++out.bridges_added;
          }
          break;
        }
        ++out.redraws;
      }
      break;
    }
  }
  out.graph = WeightedGraph(n, with_weights(pairs, spec, rng));
  return out;
}

WeightedGraph generate(const GeneratorSpec& spec) { return generate_with_info(spec).graph; }

}  // namespace respark
