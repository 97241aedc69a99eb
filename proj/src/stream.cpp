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

#include "respark/stream.hpp"

#include <algorithm>
#include <string>

namespace respark {

namespace {

template <typename Fn>
auto at_step(std::uint32_t step, Fn&& fn) {
  const std::string where = "step " + std::to_string(step) + ": ";
  try {
    return fn();
  } catch (const InputError& e) {
    throw InputError(where + e.what());
  } catch (const ConnectivityError& e) {
    throw ConnectivityError(where + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(where + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(where + e.what());
  }
}

StreamTrace empty_trace(const StreamConfig& cfg) {
  StreamTrace t;
  t.budget_n = cfg.budget_n;
  t.alpha = cfg.alpha;
  return t;
}

void check_alpha(const StreamConfig& cfg) {
  if (!(cfg.alpha >= 1.0)) throw InputError("alpha must be >= 1");
  if (cfg.budget_n < 1 || cfg.budget_n >= 2147483647) throw InputError("budget N out of range");
}

}  // namespace

StreamResult stream_sparsify(const WeightedGraph& g, const StreamConfig& cfg,
                             std::optional<std::int64_t> block_size) {
  cfg.check_matches(g);
  check_alpha(cfg);
  const RandomTape tape(cfg.seed);
  const std::vector<Block> blocks = partition_stream(g, block_size.value_or(cfg.budget_n));

  StreamResult out;
  out.trace = empty_trace(cfg);
  Sparsifier h = Sparsifier::empty(cfg.n, cfg.budget_n, cfg.alpha, cfg.seed);
  for (const Block& block : blocks) {
    const std::uint32_t step = h.step() + 1;
    at_step(step, [&] {
      const std::vector<BlockEdge> arriving = block_edges(g, block);
      std::vector<EdgeId> ids;
      ids.reserve(h.entries().size());
      for (const EdgeCopies& c : h.entries()) ids.push_back(c.edge);
      const std::vector<Edge> aggregated = h.aggregated_edges();
      const EstimationInput input{ids, aggregated, arriving, static_cast<std::size_t>(block.end),
                                  step};
      const std::vector<ResistanceEstimate> est = estimate_step(g, cfg, input);
      ResparsifyResult r = resparsify(h, arriving, est, tape, {cfg.no_drop});
      h = std::move(r.next);
      out.trace.steps.push_back(std::move(r.trace));
      if (cfg.diagnostics) {
        out.diagnostics.push_back(
            diagnose_step(h, g, static_cast<std::size_t>(block.end), out.trace, cfg.eps));
      }
      return 0;
    });
  }
  out.sparsifier = std::move(h);
  return out;
}

std::vector<std::uint32_t> block_schedule(std::size_t m, std::int64_t block_size) {
  if (block_size < 1) throw InputError("block size must be >= 1");
  std::vector<std::uint32_t> s(m);
  for (std::size_t e = 0; e < m; ++e) {
    s[e] = static_cast<std::uint32_t>(e / static_cast<std::size_t>(block_size)) + 1;
  }
  return s;
}

namespace {

void validate_schedule(std::span<const std::uint32_t> arrival, std::size_t m) {
  if (arrival.size() != m) throw InputError("arrival schedule must list every stream edge");
  if (m == 0) return;
  if (arrival[0] != 1) throw InputError("arrival schedule must start at step 1");
  for (std::size_t e = 1; e < m; ++e) {
    if (arrival[e] != arrival[e - 1] && arrival[e] != arrival[e - 1] + 1) {
      throw InputError("arrival schedule must be stream-ordered with no empty steps");
    }
  }
}

Sparsifier snapshot(const WeightedGraph& g, const StreamConfig& cfg, std::uint32_t step,
                    std::span<const std::uint8_t> z, std::span<const double> p,
                    std::size_t arrived) {
  const auto big_n = static_cast<std::size_t>(cfg.budget_n);
  std::vector<EdgeCopies> entries;
  for (std::size_t e = 0; e < arrived; ++e) {
    EdgeCopies c{static_cast<EdgeId>(e), g.edges()[e], p[e], {}};
    for (std::size_t j = 0; j < big_n; ++j) {
      if (z[e * big_n + j]) c.alive.push_back(static_cast<std::uint32_t>(j + 1));
    }
    if (!c.alive.empty()) entries.push_back(std::move(c));
  }
  return Sparsifier::from_entries(cfg.n, cfg.budget_n, cfg.alpha, cfg.seed, step,
                                  std::move(entries));
}

}  // namespace

StreamResult single_edge_stream(const WeightedGraph& g, const StreamConfig& cfg,
                                std::optional<std::vector<std::uint32_t>> arrival,
                                const IndicatorObserver& observer) {
  cfg.check_matches(g);
  check_alpha(cfg);
  const std::size_t m = g.num_edges();
  const std::vector<std::uint32_t> when = arrival ? std::move(*arrival) : block_schedule(m, 1);
  validate_schedule(when, m);
  const RandomTape tape(cfg.seed);
  const auto big_n = static_cast<std::size_t>(cfg.budget_n);
  const std::uint32_t steps = m == 0 ? 0 : when.back();

  std::vector<std::uint8_t> z(m * big_n, 1);
  std::vector<double> p(m, 1.0);
  std::vector<std::uint32_t> alive(m, static_cast<std::uint32_t>(big_n));

  StreamResult out;
  out.trace = empty_trace(cfg);
  std::size_t arrived = 0;
  for (std::uint32_t s = 1; s <= steps; ++s) {
    at_step(s, [&] {
      const std::size_t seen = arrived;
      while (arrived < m && when[arrived] == s) ++arrived;

      std::vector<EdgeId> ids;
      std::vector<Edge> aggregated;
      for (std::size_t e = 0; e < seen; ++e) {
        if (alive[e] == 0) continue;
        const Edge& ed = g.edges()[e];
        ids.push_back(static_cast<EdgeId>(e));
        aggregated.push_back({ed.u, ed.v, aggregated_weight(alive[e], ed.weight, cfg.budget_n, p[e])});
      }
      std::vector<BlockEdge> arriving;
      for (std::size_t e = seen; e < arrived; ++e) {
        arriving.push_back({static_cast<EdgeId>(e), g.edges()[e]});
      }
      const EstimationInput input{ids, aggregated, arriving, arrived, s};
      const std::vector<ResistanceEstimate> est = estimate_step(g, cfg, input);

      StepTrace st;
      st.step = s;
      std::size_t k = 0;
      auto update = [&](std::size_t e) {
        if (est[k].edge != static_cast<EdgeId>(e)) {
          throw InvariantError("estimate order does not match edge order");
        }
        const Edge& ed = g.edges()[e];
        const double p_prev = p[e];
        const double p_new =
            cfg.no_drop ? 1.0
                        : std::min(raw_probability(ed.weight, est[k].r_tilde, cfg.alpha, cfg.n),
                                   p_prev);
        ++k;
        const double ratio = p_new / p_prev;
        if (ratio > 1.0) throw InvariantError("keep ratio above 1 (min rule broken)");
        std::uint8_t* row = z.data() + e * big_n;
        std::uint32_t count = 0;
        for (std::size_t j = 0; j < big_n; ++j) {
          if (!row[j]) continue;
          row[j] = tape.keep(s, static_cast<std::uint32_t>(e), static_cast<std::uint32_t>(j + 1),
                             ratio)
                       ? 1
                       : 0;
          count += row[j];
        }
        st.edges.push_back({static_cast<EdgeId>(e), p_prev, p_new, alive[e], count, ed.weight,
                            ed.u, ed.v});
        p[e] = p_new;
        alive[e] = count;
      };
      for (EdgeId e : ids) update(static_cast<std::size_t>(e));
      for (std::size_t e = seen; e < arrived; ++e) update(e);

      out.trace.steps.push_back(std::move(st));
      if (observer) observer(IndicatorState{s, arrived, cfg.budget_n, z, p, when});
      if (cfg.diagnostics) {
        const Sparsifier h = snapshot(g, cfg, s, z, p, arrived);
        out.diagnostics.push_back(diagnose_step(h, g, arrived, out.trace, cfg.eps));
      }
      return 0;
    });
  }
  out.sparsifier = snapshot(g, cfg, steps, z, p, arrived);
  return out;
}

double indicator_projection_error(const IndicatorState& state, const WeightedGraph& g,
                                  const ProjectionContext& ctx) {
  const std::size_t m = g.num_edges();
  const auto big_n = static_cast<std::size_t>(state.budget_n);
  if (state.p_tilde.size() != m || state.indicators.size() != m * big_n) {
    throw InputError("indicator state does not match the stream graph");
  }
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(ctx.n(), ctx.n());
  for (std::size_t e = 0; e < m; ++e) {
    double coeff = 0.0;
    for (std::size_t j = 0; j < big_n; ++j) {
      coeff += 1.0 - static_cast<double>(state.indicators[e * big_n + j]) / state.p_tilde[e];
    }
    coeff /= static_cast<double>(big_n);
    if (coeff == 0.0) continue;
    const Edge& ed = g.edges()[e];
    y.selfadjointView<Eigen::Lower>().rankUpdate(ctx.edge_vector(ed.u, ed.v, ed.weight), coeff);
  }
  const Eigen::MatrixXd full = y.selfadjointView<Eigen::Lower>();
  return spectral_norm_symmetric(full);
}

}  // namespace respark
