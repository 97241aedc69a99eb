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

#include "respark/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace respark {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

}  // namespace

double budget_expression(double eps, double delta, double alpha, double kappa, int n,
                         std::int64_t m) {
  require(eps > 0.0 && eps < 1.0, "eps must be in (0, 1)");
  require(delta > 0.0 && delta < 1.0, "delta must be in (0, 1)");
  require(alpha >= 1.0 && std::isfinite(alpha), "alpha must be >= 1");
  require(kappa >= 1.0 && std::isfinite(kappa), "kappa must be >= 1");
  require(n >= 2, "n must be >= 2");
  require(m >= 1, "m must be >= 1");
  const double log_term = std::log(3.0 * kappa * static_cast<double>(m) / delta);
  return 40.0 * alpha * alpha * n * log_term * log_term / (eps * eps);
}

std::int64_t compute_budget(double eps, double delta, double alpha, double kappa, int n,
                            std::int64_t m) {
  const double value = budget_expression(eps, delta, alpha, kappa, n, m);
  const double alpha_cap = std::sqrt(kappa * n / 3.0);
  if (alpha > alpha_cap) {
    throw InputError("alpha = " + std::to_string(alpha) + " exceeds sqrt(kappa n / 3) = " +
                     std::to_string(alpha_cap));
  }
  if (!(value < 2147483647.0)) throw InputError("budget N overflows the copy index range");
  return static_cast<std::int64_t>(std::ceil(value));
}

StreamConfig StreamConfig::for_graph(const WeightedGraph& g, const StreamParams& p) {
  require(g.num_edges() >= 1, "stream needs at least one edge");
  StreamConfig cfg;
  cfg.eps = p.eps;
  cfg.delta = p.delta;
  cfg.alpha = p.alpha;
  cfg.kappa = condition_kappa(g);
  cfg.n = g.num_vertices();
  cfg.m = static_cast<std::int64_t>(g.num_edges());
  cfg.seed = p.seed;
  cfg.resistance_mode = p.resistance_mode;
  cfg.backend = p.backend;
  cfg.no_drop = p.no_drop;
  cfg.diagnostics = p.diagnostics;
  cfg.theorem_budget = compute_budget(cfg.eps, cfg.delta, cfg.alpha, cfg.kappa, cfg.n, cfg.m);
  cfg.budget_override = p.budget_override;
  if (p.budget_override) {
    require(*p.budget_override >= 1 && *p.budget_override < 2147483647,
            "budget override must be a positive 32-bit integer");
    cfg.budget_n = *p.budget_override;
  } else {
    cfg.budget_n = cfg.theorem_budget;
  }
  if (g.max_weight() > 1.0) {
    cfg.warnings.push_back("a_max > 1: theorem constants assume weights at most 1");
  }
  if (std::log(cfg.kappa) > std::log(static_cast<double>(cfg.n))) {
    cfg.warnings.push_back("log(kappa) exceeds log(n): kappa^2 = poly(n) is doubtful");
  }
  if (p.budget_override) cfg.warnings.push_back("budget overridden: outside theorem constants");
  return cfg;
}

void StreamConfig::check_matches(const WeightedGraph& g) const {
  require(n == g.num_vertices(), "config n does not match the graph");
  require(m == static_cast<std::int64_t>(g.num_edges()), "config m does not match the graph");
  require(std::abs(kappa - condition_kappa(g)) <= 1e-12 * kappa, "config kappa does not match");
}

std::vector<Block> partition_stream(const WeightedGraph& g, std::int64_t block_size) {
  require(block_size >= 1, "block size must be >= 1");
  std::vector<Block> blocks;
  const auto m = static_cast<std::int64_t>(g.num_edges());
  for (std::int64_t begin = 0; begin < m; begin += block_size) {
    blocks.push_back({static_cast<EdgeId>(begin), static_cast<EdgeId>(std::min(m, begin + block_size))});
  }
  return blocks;
}

double copy_weight(double a, std::int64_t budget_n, double p_tilde) {
  return a / (static_cast<double>(budget_n) * p_tilde);
}

double aggregated_weight(std::size_t count, double a, std::int64_t budget_n, double p_tilde) {
  return static_cast<double>(count) * a / (static_cast<double>(budget_n) * p_tilde);
}

Sparsifier Sparsifier::empty(int n, std::int64_t budget_n, double alpha, std::uint64_t seed) {
  return from_entries(n, budget_n, alpha, seed, 0, {});
}

Sparsifier Sparsifier::from_entries(int n, std::int64_t budget_n, double alpha,
                                    std::uint64_t seed, std::uint32_t step,
                                    std::vector<EdgeCopies> entries) {
  require(n >= 1, "sparsifier needs n >= 1");
  require(budget_n >= 1, "sparsifier needs N >= 1");
  Sparsifier h;
  h.n_ = n;
  h.budget_n_ = budget_n;
  h.alpha_ = alpha;
  h.seed_ = seed;
  h.step_ = step;
  std::erase_if(entries, [](const EdgeCopies& c) { return c.alive.empty(); });
  std::sort(entries.begin(), entries.end(),
            [](const EdgeCopies& a, const EdgeCopies& b) { return a.edge < b.edge; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const EdgeCopies& c = entries[i];
    require(i == 0 || entries[i - 1].edge != c.edge, "duplicate edge id in sparsifier");
    require(c.p_tilde > 0.0 && c.p_tilde <= 1.0, "p_tilde must lie in (0, 1]");
    require(std::is_sorted(c.alive.begin(), c.alive.end()), "copy indices must be ascending");
    require(c.alive.front() >= 1 && c.alive.back() <= budget_n, "copy index outside [1, N]");
  }
  h.entries_ = std::move(entries);
  return h;
}

const EdgeCopies* Sparsifier::find(EdgeId e) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e,
                             [](const EdgeCopies& c, EdgeId id) { return c.edge < id; });
  return it != entries_.end() && it->edge == e ? &*it : nullptr;
}

std::size_t Sparsifier::copy_count() const {
  std::size_t total = 0;
  for (const EdgeCopies& c : entries_) total += c.alive.size();
  return total;
}

std::vector<Edge> Sparsifier::aggregated_edges() const {
  std::vector<Edge> out;
  out.reserve(entries_.size());
  for (const EdgeCopies& c : entries_) {
    out.push_back({c.endpoints.u, c.endpoints.v,
                   aggregated_weight(c.alive.size(), c.endpoints.weight, budget_n_, c.p_tilde)});
  }
  return out;
}

std::vector<Edge> Sparsifier::copy_edges() const {
  std::vector<Edge> out;
  out.reserve(copy_count());
  for (const EdgeCopies& c : entries_) {
    const double w = copy_weight(c.endpoints.weight, budget_n_, c.p_tilde);
    for (std::size_t k = 0; k < c.alive.size(); ++k) out.push_back({c.endpoints.u, c.endpoints.v, w});
  }
  return out;
}

WeightedGraph Sparsifier::as_graph() const { return WeightedGraph(n_, aggregated_edges()); }

Laplacian Sparsifier::laplacian() const {
  const std::vector<Edge> copies = copy_edges();
  return laplacian_of(n_, copies);
}

std::vector<BlockEdge> block_edges(const WeightedGraph& g, Block block) {
  std::vector<BlockEdge> out;
  out.reserve(block.size());
  for (EdgeId e = block.begin; e < block.end; ++e) out.push_back({e, g.edge(e)});
  return out;
}

double raw_probability(double a, double r_tilde, double alpha, int n) {
  const double p = a * r_tilde / (alpha * static_cast<double>(n - 1));
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw InvariantError("non-positive sampling probability (r~ = " + std::to_string(r_tilde) + ")");
  }
  return std::min(p, 1.0);
}

ResparsifyResult resparsify(const Sparsifier& h_prev, std::span<const BlockEdge> block,
                            std::span<const ResistanceEstimate> estimates, const RandomTape& tape,
                            ResparsifyOptions options) {
  std::unordered_map<EdgeId, double> r_of;
  r_of.reserve(estimates.size());
  for (const ResistanceEstimate& r : estimates) r_of[r.edge] = r.r_tilde;
  auto estimate = [&](EdgeId e) {
    auto it = r_of.find(e);
    if (it == r_of.end()) throw InputError("resparsify: missing estimate for edge " + std::to_string(e));
    return it->second;
  };

  const std::uint32_t step = h_prev.step() + 1;
  const std::int64_t big_n = h_prev.budget_n();
  const int n = h_prev.n();
  const double alpha = h_prev.alpha();

  ResparsifyResult result;
  result.trace.step = step;
  std::vector<EdgeCopies> next;
  next.reserve(h_prev.entries().size() + block.size());

  for (const EdgeCopies& prev : h_prev.entries()) {
    const double p_new = options.no_drop
                             ? 1.0
                             : std::min(raw_probability(prev.endpoints.weight, estimate(prev.edge),
                                                        alpha, n),
                                        prev.p_tilde);
    const double ratio = p_new / prev.p_tilde;
    if (ratio > 1.0) throw InvariantError("keep ratio above 1 (min rule broken)");
    EdgeCopies kept{prev.edge, prev.endpoints, p_new, {}};
    kept.alive.reserve(prev.alive.size());
    const auto e = static_cast<std::uint32_t>(prev.edge);
    for (std::uint32_t j : prev.alive) {
      if (tape.keep(step, e, j, ratio)) kept.alive.push_back(j);
    }
    result.trace.edges.push_back({prev.edge, prev.p_tilde, p_new,
                                  static_cast<std::uint32_t>(prev.alive.size()),
                                  static_cast<std::uint32_t>(kept.alive.size()),
                                  prev.endpoints.weight, prev.endpoints.u, prev.endpoints.v});
    next.push_back(std::move(kept));
  }

  for (const BlockEdge& be : block) {
    if (h_prev.find(be.edge) != nullptr) {
      throw InputError("resparsify: block edge " + std::to_string(be.edge) + " already in H");
    }
    const double p_new =
        options.no_drop ? 1.0 : raw_probability(be.endpoints.weight, estimate(be.edge), alpha, n);
    EdgeCopies fresh{be.edge, be.endpoints, p_new, {}};
    const auto e = static_cast<std::uint32_t>(be.edge);
    for (std::int64_t j = 1; j <= big_n; ++j) {
      if (tape.keep(step, e, static_cast<std::uint32_t>(j), p_new)) {
        fresh.alive.push_back(static_cast<std::uint32_t>(j));
      }
    }
    result.trace.edges.push_back({be.edge, 1.0, p_new, static_cast<std::uint32_t>(big_n),
                                  static_cast<std::uint32_t>(fresh.alive.size()),
                                  be.endpoints.weight, be.endpoints.u, be.endpoints.v});
    next.push_back(std::move(fresh));
  }

  std::sort(result.trace.edges.begin(), result.trace.edges.end(),
            [](const EdgeStepTrace& a, const EdgeStepTrace& b) { return a.edge < b.edge; });
  result.next = Sparsifier::from_entries(n, big_n, alpha, h_prev.seed(), step, std::move(next));
  return result;
}

std::vector<ResistanceEstimate> estimate_step(const WeightedGraph& g, const StreamConfig& cfg,
                                              const EstimationInput& input) {
  std::vector<ResistanceQuery> queries;
  queries.reserve(input.sparsifier_ids.size() + input.block.size());
  for (std::size_t i = 0; i < input.sparsifier_ids.size(); ++i) {
    queries.push_back({input.sparsifier_ids[i], input.sparsifier_edges[i].u,
                       input.sparsifier_edges[i].v});
  }
  for (const BlockEdge& be : input.block) queries.push_back({be.edge, be.endpoints.u, be.endpoints.v});
  if (queries.empty()) return {};

  switch (cfg.resistance_mode) {
    case AccuracyMode::kExact:
      return exact_resistances(g.prefix(input.arrived), queries, cfg.backend);
    case AccuracyMode::kInjectedNoise: {
      const auto exact = exact_resistances(g.prefix(input.arrived), queries, cfg.backend);
      AccuracyModel model{cfg.alpha, AccuracyMode::kInjectedNoise, cfg.seed};
      return inject_alpha_noise(exact, model, input.step);
    }
    case AccuracyMode::kFromSparsifier: {
      std::vector<Edge> combined(input.sparsifier_edges.begin(), input.sparsifier_edges.end());
      for (const BlockEdge& be : input.block) combined.push_back(be.endpoints);
      return resistances_from_sparsifier(cfg.n, combined, queries, cfg.eps, cfg.backend);
    }
  }
  return {};
}

void write_sparsifier(std::ostream& out, const Sparsifier& h) {
  out << "# respark sparsifier step=" << h.step() << " N=" << h.budget_n() << " seed=" << h.seed()
      << '\n';
  out << "n " << h.n() << '\n';
  std::ostringstream line;
  line.precision(17);
  for (const EdgeCopies& c : h.entries()) {
    const double w = copy_weight(c.endpoints.weight, h.budget_n(), c.p_tilde);
    for (std::uint32_t j : c.alive) {
      line.str("");
      line << c.endpoints.u << ' ' << c.endpoints.v << ' ' << w << ' ' << c.edge << ' ' << j << ' '
           << c.p_tilde << '\n';
      out << line.str();
    }
  }
}

Sparsifier read_sparsifier(std::istream& in) {
  std::string line;
  std::uint32_t step = 0;
  std::int64_t big_n = -1;
  std::uint64_t seed = 0;
  int n = -1;
  std::map<EdgeId, EdgeCopies> by_edge;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fail = [&](const std::string& why) {
      throw InputError("sparsifier line " + std::to_string(line_no) + ": " + why);
    };
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (line.find("respark sparsifier") != std::string::npos) {
        std::istringstream hs(line.substr(line.find("sparsifier") + 10));
        std::string tok;
        while (hs >> tok) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) continue;
          const std::string key = tok.substr(0, eq);
          const std::string val = tok.substr(eq + 1);
          if (key == "step") step = static_cast<std::uint32_t>(std::stoul(val));
          if (key == "N") big_n = std::stoll(val);
          if (key == "seed") seed = std::stoull(val);
        }
      }
      continue;
    }
    std::istringstream ls(line);
    if (line[first] == 'n') {
      std::string tag;
      if (!(ls >> tag >> n) || tag != "n" || n < 1) fail("malformed 'n <count>' line");
      continue;
    }
    Edge ed;
    double w = 0.0;
    long long e = 0;
    long long j = 0;
    double p = 0.0;
    if (!(ls >> ed.u >> ed.v >> w >> e >> j >> p)) fail("expected 'u v weight e j p_tilde'");
    if (big_n < 1) fail("missing header with N before copy lines");
    // The original edge weight a_e = w * N * p.
    ed.weight = w * static_cast<double>(big_n) * p;
    auto [it, inserted] = by_edge.try_emplace(static_cast<EdgeId>(e));
    EdgeCopies& c = it->second;
    if (inserted) {
      c.edge = static_cast<EdgeId>(e);
      c.endpoints = ed;
      c.p_tilde = p;
    } else if (c.p_tilde != p || c.endpoints.u != ed.u || c.endpoints.v != ed.v) {
      fail("copies of one edge disagree on endpoints or p_tilde");
    }
    c.alive.push_back(static_cast<std::uint32_t>(j));
  }
  if (big_n < 1) throw InputError("sparsifier file lacks the '# respark sparsifier' header");
  std::vector<EdgeCopies> entries;
  Vertex max_id = -1;
  for (auto& [id, c] : by_edge) {
    std::sort(c.alive.begin(), c.alive.end());
    max_id = std::max({max_id, c.endpoints.u, c.endpoints.v});
    entries.push_back(std::move(c));
  }
  if (n < 0) n = std::max(1, max_id + 1);
  return Sparsifier::from_entries(n, big_n, 1.0, seed, step, std::move(entries));
}

}  // namespace respark
