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

#ifndef RESPARK_STREAM_HPP
#define RESPARK_STREAM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "respark/graph.hpp"
#include "respark/linalg.hpp"
#include "respark/sparsifier.hpp"
#include "respark/verify.hpp"

namespace respark {

struct StreamResult {
  Sparsifier sparsifier;
  std::vector<DiagnosticsRecord> diagnostics;  // one per step when cfg.diagnostics
  StreamTrace trace;
};

/// Block-stream driver: resparsify over consecutive blocks of `block_size`
/// edges (default N). Errors raised inside a step are rethrown with the same
/// type and a "step <s>: " prefix.
StreamResult stream_sparsify(const WeightedGraph& g, const StreamConfig& cfg,
                             std::optional<std::int64_t> block_size = std::nullopt);

/// Full indicator state after step s of the single-edge formulation.
/// indicators[e * N + (j - 1)] is z_{s,e,j}; edges not yet seen hold
/// z = 1 and p_tilde = 1.
struct IndicatorState {
  std::uint32_t step = 0;
  std::size_t arrived = 0;
  std::int64_t budget_n = 0;
  std::span<const std::uint8_t> indicators;
  std::span<const double> p_tilde;
  std::span<const std::uint32_t> arrival;  // arrival step per edge

  std::uint8_t z(EdgeId e, std::uint32_t j) const {
    return indicators[static_cast<std::size_t>(e) * static_cast<std::size_t>(budget_n) + (j - 1)];
  }
};

using IndicatorObserver = std::function<void(const IndicatorState&)>;

/// Arrival schedule grouping stream edges into blocks of `block_size`:
/// edge e arrives at step floor(e / block_size) + 1.
std::vector<std::uint32_t> block_schedule(std::size_t m, std::int64_t block_size);

/// Single-edge formulation holding every indicator z_{s,e,j} explicitly.
/// `arrival` (default: edge e at step e + 1) must start at 1 and grow by at
/// most one per edge. With a block schedule the result matches
/// stream_sparsify for that block size bit for bit.
StreamResult single_edge_stream(const WeightedGraph& g, const StreamConfig& cfg,
                                std::optional<std::vector<std::uint32_t>> arrival = std::nullopt,
                                const IndicatorObserver& observer = {});

/// || sum over all m stream edges of (1/N) sum_j (1 - z / p~) v_e v_e^T ||
/// with v_e taken against `ctx` (the partial graph G_s). Edges not yet seen
/// enter with their z = p~ = 1 terms.
double indicator_projection_error(const IndicatorState& state, const WeightedGraph& g,
                                  const ProjectionContext& ctx);

}  // namespace respark

#endif  // RESPARK_STREAM_HPP
