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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "respark/experiment.hpp"
#include "respark/generators.hpp"
#include "respark/graph.hpp"
#include "respark/linalg.hpp"
#include "respark/random_tape.hpp"
#include "respark/resistance.hpp"
#include "respark/sparsifier.hpp"
#include "respark/stream.hpp"
#include "respark/verify.hpp"

namespace respark {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double sum_leverage(const WeightedGraph& g) {
  double sum = 0.0;
  const std::vector<ResistanceEstimate> r = exact_resistances(g, queries_for(g));
  for (std::size_t e = 0; e < r.size(); ++e) sum += g.edge(static_cast<EdgeId>(e)).weight * r[e].r_tilde;
  return sum;
}

Outcome resistance_identity() {
  const GraphModel models[] = {GraphModel::kPath, GraphModel::kCycle, GraphModel::kComplete,
                               GraphModel::kErdosRenyi};
  double worst = 0.0;
  int graphs = 0;
  bool ok = true;
  for (int i = 0; i < 50; ++i) {
    const int n = 10 + (i * 90) / 49;
    const GeneratorSpec spec{models[i % 4], n, 0.3, 0.5, 2.0, static_cast<std::uint64_t>(1000 + i)};
    const WeightedGraph g = generate(spec);
    const double err = std::abs(sum_leverage(g) - (n - 1));
    worst = std::max(worst, err / n);
    ok = ok && err <= 1e-8 * n;
    ++graphs;
  }
  return {ok, fmt("%d graphs, max |sum a r - (n-1)| / n = %.3e", graphs, worst)};
}

Outcome known_resistances() {
  const WeightedGraph k3(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const WeightedGraph c4(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
  const WeightedGraph tree(5, {{0, 1, 2.0}, {1, 2, 0.5}, {1, 3, 4.0}, {3, 4, 1.25}});
  double worst = 0.0;
  for (const ResistanceEstimate& r : exact_resistances(k3, queries_for(k3))) {
    worst = std::max(worst, std::abs(r.r_tilde - 2.0 / 3.0));
  }
  for (const ResistanceEstimate& r : exact_resistances(c4, queries_for(c4))) {
    worst = std::max(worst, std::abs(r.r_tilde - 0.75));
  }
  const std::vector<ResistanceEstimate> rt = exact_resistances(tree, queries_for(tree));
  for (std::size_t e = 0; e < rt.size(); ++e) {
    worst = std::max(worst, std::abs(rt[e].r_tilde - 1.0 / tree.edge(static_cast<EdgeId>(e)).weight));
  }
  return {worst <= 1e-10, fmt("max deviation %.3e", worst)};
}

Outcome projection_consistency() {
  ExperimentConfig cfg;
  cfg.graph = {GraphModel::kErdosRenyi, 40, 0.25, 1.0, 1.0, 31};
  cfg.params.eps = 0.5;
  cfg.params.resistance_mode = AccuracyMode::kExact;
  cfg.params.budget_override = 1000;
  cfg.trials = 100;
  cfg.block_size = 25;
  cfg.master_seed = 3;
  const ExperimentReport rep = run_experiment(cfg);
  std::int64_t checked = 0;
  std::int64_t spectral_fail = 0;
  for (const TrialResult& t : rep.trial_results) {
    for (const DiagnosticsRecord& d : t.steps) {
      checked += d.proj_error_norm <= cfg.params.eps;
      spectral_fail += !d.spectral_pass;
    }
  }
  const bool ok = rep.error_trials == 0 && rep.projection_counterexamples == 0 && checked > 0;
  return {ok, fmt("%lld steps with error <= eps checked, %lld counterexamples "
                  "(%lld steps failing spectral check overall)",
                  static_cast<long long>(checked),
                  static_cast<long long>(rep.projection_counterexamples),
                  static_cast<long long>(spectral_fail))};
}

Outcome no_drop_exactness() {
  const WeightedGraph g = generate({GraphModel::kErdosRenyi, 25, 0.4, 0.5, 3.0, 8});
  StreamParams p;
  p.no_drop = true;
  p.budget_override = 3;
  p.resistance_mode = AccuracyMode::kExact;
  p.seed = 5;
  const StreamResult r = stream_sparsify(g, StreamConfig::for_graph(g, p), 7);
  const Eigen::MatrixXd lg = build_laplacian(g).matrix;
  const double rel = (r.sparsifier.laplacian().matrix - lg).norm() / lg.norm();
  const double proj = projection_error(r.sparsifier, ProjectionContext(g));
  return {rel <= 1e-12 && proj <= 1e-10,
          fmt("relative Frobenius %.3e, projection error %.3e", rel, proj)};
}

ExperimentReport quality_suite() {
  ExperimentConfig cfg;
  cfg.graph = {GraphModel::kErdosRenyi, 40, 0.25, 1.0, 1.0, 11};
  cfg.params.eps = 0.5;
  cfg.params.alpha = 1.0;
  cfg.params.resistance_mode = AccuracyMode::kExact;
  cfg.params.budget_override = 2000;
  cfg.trials = 200;
  cfg.master_seed = 2026;
  return run_experiment(cfg);
}

Outcome sparsifier_quality(const ExperimentReport& rep) {
  return {rep.error_trials == 0 && rep.a_event_rate <= 0.05,
          fmt("a_event rate %.4f over %lld trials, 95%% CP interval [%.4f, %.4f]", rep.a_event_rate,
              static_cast<long long>(rep.config.trials), rep.a_event_ci.lower,
              rep.a_event_ci.upper)};
}

Outcome space_event(const ExperimentReport& rep) {
  std::size_t max_copies = 0;
  for (const StepAggregate& s : rep.per_step) max_copies = std::max(max_copies, s.max_copy_count);
  return {rep.b_failures == 0 && rep.error_trials == 0,
          fmt("%lld trials with copy_count >= 3N (max copies %zu, 3N = %lld)",
              static_cast<long long>(rep.b_failures), max_copies,
              static_cast<long long>(3 * rep.budget_n))};
}

Outcome quadratic_variation_suite(const ExperimentReport& rep) {
  double worst = 0.0;
  for (const TrialResult& t : rep.trial_results) worst = std::max(worst, t.max_w_norm);
  const double held = 1.0 - static_cast<double>(rep.w_bound_violations) /
                                static_cast<double>(rep.config.trials);
  return {held >= 0.99 && rep.error_trials == 0,
          fmt("bound %.4f held in %.1f%% of trials (max ||W|| %.4f)", rep.w_bound, 100.0 * held,
              worst)};
}

Outcome dominating_distribution() {
  constexpr std::size_t kSamples = 1'000'000;
  const double p = 0.01;
  std::vector<double> s = sample_dominating_w0_batch(p, 1.0, RandomTape(77), kSamples);
  double mean = 0.0;
  for (double x : s) mean += x;
  mean /= static_cast<double>(kSamples);
  const double target = 1.0 + std::log(1.0 / p);
  std::sort(s.begin(), s.end());
  const double band = dkw_band(kSamples, 0.999);
  double worst = 0.0;
  for (double a : {1.5, 2.0, 5.0}) {
    const auto below = std::upper_bound(s.begin(), s.end(), a) - s.begin();
    const double ecdf = static_cast<double>(below) / static_cast<double>(kSamples);
    worst = std::max(worst, std::abs(ecdf - (1.0 - 1.0 / a)));
  }
  const double rel = std::abs(mean - target) / target;
  return {rel <= 0.01 && worst <= band,
          fmt("mean %.4f (target %.4f, rel %.2e); max c.d.f. gap %.2e, DKW band %.2e", mean,
              target, rel, worst, band)};
}

Outcome dominance() {
  const WeightedGraph g = generate({GraphModel::kErdosRenyi, 10, 0.6, 1.0, 1.0, 21});
  constexpr EdgeId kEdge = 0;
  StreamParams p;
  p.resistance_mode = AccuracyMode::kExact;
  p.budget_override = 200;
  p.diagnostics = false;
  const std::vector<ResistanceEstimate> r = exact_resistances(g, queries_for(g));
  const double p_te = raw_probability(g.edge(kEdge).weight, r[kEdge].r_tilde, 1.0, g.num_vertices());

  std::vector<double> trace_samples;
  std::uint32_t steps = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    p.seed = 500 + seed;
    const StreamResult run = stream_sparsify(g, StreamConfig::for_graph(g, p), 1);
    steps = static_cast<std::uint32_t>(run.trace.steps.size());
    const std::vector<double> s = max_ratio_samples(run.trace, kEdge, steps);
    trace_samples.insert(trace_samples.end(), s.begin(), s.end());
  }
  const std::vector<double> w0 =
      sample_dominating_w0_batch(p_te, 1.0, RandomTape(4242), trace_samples.size());
  const DominanceResult d = dominance_check(trace_samples, w0, 0.999);
  return {d.dominated, fmt("%zu samples per set over %u steps, p_te %.4f, max excess %.4f, band %.4f",
                           trace_samples.size(), steps, p_te, d.max_excess, d.band)};
}

Outcome algorithm_equivalence() {
  int compared = 0;
  int mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    const WeightedGraph g = generate(
        {GraphModel::kErdosRenyi, 12 + i % 5, 0.5, 0.5, 2.0, static_cast<std::uint64_t>(300 + i)});
    StreamParams p;
    p.budget_override = 60;
    p.seed = 900 + static_cast<std::uint64_t>(i);
    p.resistance_mode = i % 2 ? AccuracyMode::kExact : AccuracyMode::kFromSparsifier;
    p.diagnostics = false;
    const StreamConfig cfg = StreamConfig::for_graph(g, p);
    const auto m = static_cast<std::int64_t>(g.num_edges());
    for (const std::int64_t b : {std::int64_t{1}, std::int64_t{3}, m}) {
      const Sparsifier block = stream_sparsify(g, cfg, b).sparsifier;
      const Sparsifier single =
          single_edge_stream(g, cfg, block_schedule(g.num_edges(), b)).sparsifier;
      mismatches += !(block == single);
      ++compared;
    }
  }
  return {mismatches == 0, fmt("%d of %d (instance, block size) pairs identical",
                               compared - mismatches, compared)};
}

Outcome martingale_increment() {
  const WeightedGraph g = generate({GraphModel::kErdosRenyi, 20, 0.5, 0.5, 2.0, 13});
  constexpr std::int64_t kBlock = 10;
  constexpr std::uint32_t kStep = 4;
  StreamParams p;
  p.resistance_mode = AccuracyMode::kExact;
  p.budget_override = 40;
  p.seed = 1;
  p.diagnostics = false;
  const StreamConfig cfg = StreamConfig::for_graph(g, p);

  const std::size_t prefix = static_cast<std::size_t>(kBlock) * (kStep - 1);
  const WeightedGraph head = g.prefix(prefix);
  StreamConfig head_cfg = StreamConfig::for_graph(head, p);
  const Sparsifier h_prev = stream_sparsify(head, head_cfg, kBlock).sparsifier;

  const std::vector<Block> blocks = partition_stream(g, kBlock);
  const std::vector<BlockEdge> block = block_edges(g, blocks[kStep - 1]);
  std::vector<EdgeId> ids;
  std::vector<Edge> agg;
  for (const EdgeCopies& c : h_prev.entries()) {
    ids.push_back(c.edge);
    agg.push_back({c.endpoints.u, c.endpoints.v,
                   aggregated_weight(c.alive.size(), c.endpoints.weight, h_prev.budget_n(),
                                     c.p_tilde)});
  }
  const std::vector<ResistanceEstimate> est = estimate_step(
      g, cfg, {ids, agg, block, static_cast<std::size_t>(blocks[kStep - 1].end), kStep});

  constexpr int kReplays = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  bool dropping = false;
  for (int k = 0; k < kReplays; ++k) {
    const RandomTape tape(RandomTape(8080).derive_seed(static_cast<std::uint64_t>(k)));
    const ResparsifyResult res = resparsify(h_prev, block, est, tape);
    double inc = 0.0;
    for (const EdgeStepTrace& t : res.trace.edges) {
      inc += t.alive_after / t.p_new - t.alive_before / t.p_prev;
      dropping = dropping || t.p_new < t.p_prev;
    }
    sum += inc;
    sum_sq += inc * inc;
  }
  const double mean = sum / kReplays;
  const double var = (sum_sq - kReplays * mean * mean) / (kReplays - 1);
  const double se = std::sqrt(var / kReplays);
  return {dropping && se > 0.0 && std::abs(mean) <= 4.0 * se,
          fmt("mean increment %.4f, standard error %.4f (%.2f SE)", mean, se,
              se > 0 ? std::abs(mean) / se : 0.0)};
}

Outcome determinism() {
  ExperimentConfig cfg;
  cfg.graph = {GraphModel::kErdosRenyi, 20, 0.4, 0.5, 2.0, 5};
  cfg.params.budget_override = 150;
  cfg.trials = 16;
  cfg.block_size = 15;
  cfg.master_seed = 123456789;
  const std::string a = emit_report_json(run_experiment(cfg));
  const std::string b = emit_report_json(run_experiment(cfg, 1));
  const std::string c = emit_report_json(run_experiment(cfg, 3));
  return {a == b && b == c, fmt("three runs, %zu-byte reports, identical: %s", a.size(),
                                a == b && b == c ? "yes" : "no")};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace respark

int main() {
  using namespace respark;
  ExperimentReport suite;
  bool suite_ok = false;
  std::string suite_error;
  auto suite_check = [&](auto check) {
    return [&, check] {
      if (!suite_ok) return Outcome{false, "quality suite did not run: " + suite_error};
      return check(suite);
    };
  };
  const std::vector<Criterion> criteria = {
      {1, "resistance identity", 10, resistance_identity},
      {2, "known resistances", 1, known_resistances},
      {3, "projection error implies spectral bound", 300, projection_consistency},
      {4, "no-drop exactness", 10, no_drop_exactness},
      {5, "sparsifier quality", 600,
       [&] {
         try {
           suite = quality_suite();
           suite_ok = true;
         } catch (const std::exception& e) {
           suite_error = e.what();
           return Outcome{false, suite_error};
         }
         return sparsifier_quality(suite);
       }},
      {6, "space event", 0, suite_check(space_event)},
      {7, "quadratic variation bound", 0, suite_check(quadratic_variation_suite)},
      {8, "dominating distribution", 30, dominating_distribution},
      {9, "stochastic dominance", 0, dominance},
      {10, "algorithm equivalence", 0, algorithm_equivalence},
      {11, "martingale increment", 0, martingale_increment},
      {12, "determinism", 0, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.passed = false;
      o.detail += fmt("; exceeded %.0f s limit", c.time_limit_s);
    }
    failures += !o.passed;
    std::printf("criterion %2d %s: %s; %s (%.2f s)\n", c.id, o.passed ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
