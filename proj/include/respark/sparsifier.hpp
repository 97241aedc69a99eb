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

#ifndef RESPARK_SPARSIFIER_HPP
#define RESPARK_SPARSIFIER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "respark/graph.hpp"
#include "respark/random_tape.hpp"
#include "respark/resistance.hpp"

namespace respark {

/// A broken algorithm invariant (e.g. a keep ratio above 1). Indicates a bug,
/// not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// N = ceil(40 alpha^2 n ln^2(3 kappa m / delta) / eps^2), natural log.
/// Throws InputError on out-of-range arguments and when
/// alpha > sqrt(kappa n / 3).
std::int64_t compute_budget(double eps, double delta, double alpha, double kappa, int n,
                            std::int64_t m);

/// The unrounded budget expression, for scaling checks.
double budget_expression(double eps, double delta, double alpha, double kappa, int n,
                         std::int64_t m);

/// User-facing knobs; StreamConfig::for_graph derives the rest from the graph.
struct StreamParams {
  double eps = 0.5;
  double delta = 0.1;
  double alpha = 1.0;
  std::optional<std::int64_t> budget_override;
  std::uint64_t seed = 0;
  AccuracyMode resistance_mode = AccuracyMode::kFromSparsifier;
  SolverBackend backend = SolverBackend::kDense;
  /// Pin every arrived edge at p~ = 1, so resparsification keeps all copies.
  bool no_drop = false;
  /// Compute per-step DiagnosticsRecords (one dense eigensolve per step).
  bool diagnostics = true;

  friend bool operator==(const StreamParams&, const StreamParams&) = default;
};

struct StreamConfig {
  double eps = 0.5;
  double delta = 0.1;
  double alpha = 1.0;
  double kappa = 1.0;
  int n = 0;
  std::int64_t m = 0;
  /// N actually used: the override if present, else theorem_budget.
  std::int64_t budget_n = 0;
  std::int64_t theorem_budget = 0;
  std::optional<std::int64_t> budget_override;
  std::uint64_t seed = 0;
  AccuracyMode resistance_mode = AccuracyMode::kFromSparsifier;
  SolverBackend backend = SolverBackend::kDense;
  bool no_drop = false;
  bool diagnostics = true;
  std::vector<std::string> warnings;

  /// Validates eps, delta in (0,1), alpha >= 1 and alpha <= sqrt(kappa n/3);
  /// kappa comes from the graph's weights.
  static StreamConfig for_graph(const WeightedGraph& g, const StreamParams& params);

  /// Runs with an overridden budget are outside the theorem's constants.
  bool outside_theorem_constants() const { return budget_override.has_value(); }
  /// Throws InputError if n, m or kappa disagree with `g`.
  void check_matches(const WeightedGraph& g) const;
};

/// Contiguous stream blocks [begin, end) of edge ids.
struct Block {
  EdgeId begin = 0;
  EdgeId end = 0;

  std::size_t size() const { return static_cast<std::size_t>(end - begin); }
  friend bool operator==(const Block&, const Block&) = default;
};

/// ceil(m / block_size) blocks in stream order; the last one may be short.
std::vector<Block> partition_stream(const WeightedGraph& g, std::int64_t block_size);

/// Surviving copies of one edge. `alive` lists copy indices j in [1, N],
/// ascending; all of them carry weight a_e / (N p_tilde).
struct EdgeCopies {
  EdgeId edge = 0;
  Edge endpoints;
  double p_tilde = 1.0;
  std::vector<std::uint32_t> alive;

  friend bool operator==(const EdgeCopies&, const EdgeCopies&) = default;
};

/// Weight of one copy, a / (N p).
double copy_weight(double a, std::int64_t budget_n, double p_tilde);
/// Total weight of `count` copies, the form used when H enters a solve.
double aggregated_weight(std::size_t count, double a, std::int64_t budget_n, double p_tilde);

/// The multiset of surviving edge copies H_s. Entries are ordered by edge id
/// and only edges with at least one alive copy are kept.
class Sparsifier {
 public:
  Sparsifier() = default;
  static Sparsifier empty(int n, std::int64_t budget_n, double alpha, std::uint64_t seed = 0);
  static Sparsifier from_entries(int n, std::int64_t budget_n, double alpha, std::uint64_t seed,
                                 std::uint32_t step, std::vector<EdgeCopies> entries);

  int n() const { return n_; }
  std::int64_t budget_n() const { return budget_n_; }
  double alpha() const { return alpha_; }
  std::uint64_t seed() const { return seed_; }
  std::uint32_t step() const { return step_; }
  std::span<const EdgeCopies> entries() const { return entries_; }
  const EdgeCopies* find(EdgeId e) const;

  /// Sum over edges of alive copies (the z-hat total).
  std::size_t copy_count() const;
  /// One edge per stored edge id, weight = count * a / (N p).
  std::vector<Edge> aggregated_edges() const;
  /// One edge per alive copy, weight = a / (N p).
  std::vector<Edge> copy_edges() const;
  WeightedGraph as_graph() const;
  /// L_H = sum_e sum_j (a_e / (N p_e)) z_{e,j} b_e b_e^T.
  Laplacian laplacian() const;

  friend bool operator==(const Sparsifier&, const Sparsifier&) = default;

 private:
  int n_ = 0;
  std::int64_t budget_n_ = 1;
  double alpha_ = 1.0;
  std::uint64_t seed_ = 0;
  std::uint32_t step_ = 0;
  std::vector<EdgeCopies> entries_;
};

/// A block edge handed to resparsify: stream id plus endpoints and weight.
struct BlockEdge {
  EdgeId edge = 0;
  Edge endpoints;
};

std::vector<BlockEdge> block_edges(const WeightedGraph& g, Block block);

struct ResparsifyOptions {
  bool no_drop = false;
};

/// Per-edge bookkeeping of one step, enough to rebuild z-hat and p~ traces.
struct EdgeStepTrace {
  EdgeId edge = 0;
  double p_prev = 1.0;
  double p_new = 1.0;
  std::uint32_t alive_before = 0;  // N for an edge arriving at this step
  std::uint32_t alive_after = 0;
  double a_e = 1.0;  // edge weight, repeated from the stream
  Vertex u = 0;
  Vertex v = 0;
};

struct StepTrace {
  std::uint32_t step = 0;
  std::vector<EdgeStepTrace> edges;  // ascending edge id; live or arriving edges only
};

/// Step-indexed traces of a whole run.
struct StreamTrace {
  std::int64_t budget_n = 0;
  double alpha = 1.0;
  std::vector<StepTrace> steps;  // steps[k].step == k + 1
};

struct ResparsifyResult {
  Sparsifier next;
  StepTrace trace;
};

/// One resparsification: p~_{s,e} = min(a r~ / (alpha (n-1)), p~_{s-1,e});
/// alive copies survive via u_{s,e,j} <= p~_s / p~_{s-1}; each new edge gets N
/// trials at p~_s. `estimates` must cover every edge of h_prev and the block.
ResparsifyResult resparsify(const Sparsifier& h_prev, std::span<const BlockEdge> block,
                            std::span<const ResistanceEstimate> estimates, const RandomTape& tape,
                            ResparsifyOptions options = {});

/// New probability before the min rule: a r / (alpha (n - 1)), clamped to
/// (0, 1]. Throws InvariantError on non-positive or non-finite input.
double raw_probability(double a, double r_tilde, double alpha, int n);

/// Estimates for H_{s-1} + Gamma_s per the configured accuracy mode:
/// exact on G_s (`arrived` edges of `g`), from the combined graph, or exact
/// with injected noise. Queries are ordered as `sparsifier_edges` then
/// `block`.
struct EstimationInput {
  std::span<const EdgeId> sparsifier_ids;
  std::span<const Edge> sparsifier_edges;  // aggregated weights
  std::span<const BlockEdge> block;
  std::size_t arrived = 0;  // G_s = first `arrived` stream edges
  std::uint32_t step = 0;
};

std::vector<ResistanceEstimate> estimate_step(const WeightedGraph& g, const StreamConfig& cfg,
                                              const EstimationInput& input);

// Sparsifier file: "# respark sparsifier step=<s> N=<N> seed=<seed>" header,
// "n <count>", then "u v weight e j p_tilde" per alive copy.
void write_sparsifier(std::ostream& out, const Sparsifier& h);
Sparsifier read_sparsifier(std::istream& in);

}  // namespace respark

#endif  // RESPARK_SPARSIFIER_HPP
