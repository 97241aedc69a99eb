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

#ifndef RESPARK_GENERATORS_HPP
#define RESPARK_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "respark/graph.hpp"

namespace respark {

enum class GraphModel { kPath, kCycle, kComplete, kErdosRenyi, kBarbell };

std::string to_string(GraphModel model);
/// Accepts path | cycle | complete | erdos-renyi | barbell.
GraphModel parse_graph_model(const std::string& text);

struct GeneratorSpec {
  GraphModel model = GraphModel::kErdosRenyi;
  int n = 10;
  double p = 0.5;  // edge probability, Erdos-Renyi only
  double a_min = 1.0;
  double a_max = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct GeneratedGraph {
  WeightedGraph graph;
  int redraws = 0;       // rejected disconnected Erdos-Renyi draws
  int bridges_added = 0; // edges added to join components after the last redraw
};

/// Connected graph of the given model, fully determined by the spec.
/// Weights are uniform in [a_min, a_max], drawn in stream order. Throws
/// InputError for n < 2 (n < 3 for cycles), p outside (0, 1] or a bad weight
/// range.
GeneratedGraph generate_with_info(const GeneratorSpec& spec);
WeightedGraph generate(const GeneratorSpec& spec);

/// Redraws tried before bridging components of an Erdos-Renyi sample.
inline constexpr int kMaxRedraws = 100;

}  // namespace respark

#endif  // RESPARK_GENERATORS_HPP
