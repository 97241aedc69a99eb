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

#include "respark/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "respark/stream.hpp"

namespace respark {

BinomialInterval clopper_pearson(std::int64_t k, std::int64_t t, double confidence) {
  if (t < 1 || k < 0 || k > t) throw InputError("clopper_pearson: need 0 <= k <= t, t >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw InputError("confidence must be in (0, 1)");
  const double tail = (1.0 - confidence) / 2.0;
  const auto kd = static_cast<double>(k);
  const auto td = static_cast<double>(t);
  BinomialInterval ci;
  ci.lower = k == 0 ? 0.0 : boost::math::ibeta_inv(kd, td - kd + 1.0, tail);
  ci.upper = k == t ? 1.0 : boost::math::ibeta_inv(kd + 1.0, td - kd, 1.0 - tail);
  return ci;
}

namespace {

TrialResult run_trial(const WeightedGraph& g, StreamConfig cfg,
                      std::optional<std::int64_t> block_size, std::int64_t index,
                      std::uint64_t seed, double w_bound) {
  TrialResult t;
  t.index = index;
  t.seed = seed;
  cfg.seed = seed;
  cfg.diagnostics = true;
  try {
    StreamResult r = stream_sparsify(g, cfg, block_size);
    t.steps = std::move(r.diagnostics);
  } catch (const std::exception& e) {
    t.error = "trial " + std::to_string(index) + ": " + e.what();
  }
  for (const DiagnosticsRecord& d : t.steps) {
    t.any_a_event = t.any_a_event || d.a_event;
    t.any_b_event = t.any_b_event || d.b_event;
    t.max_w_norm = std::max(t.max_w_norm, d.w_norm);
    if (d.proj_error_norm <= cfg.eps && !d.spectral_pass) ++t.projection_counterexamples;
  }
  t.w_bound_exceeded = t.max_w_norm > w_bound;
  t.final_spectral_pass = t.error.empty() && !t.steps.empty() && t.steps.back().spectral_pass;
  t.failed = t.any_a_event || t.any_b_event || !t.error.empty();
  return t;
}

}  // namespace

std::vector<StepAggregate> aggregate_steps(std::span<const TrialResult> trials) {
  std::vector<StepAggregate> out;
  for (const TrialResult& t : trials) {
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
      if (out.size() <= k) {
        out.emplace_back();
        out.back().step = static_cast<std::uint32_t>(k + 1);
      }
      const DiagnosticsRecord& d = t.steps[k];
      StepAggregate& a = out[k];
      ++a.trials;
      a.mean_proj_error += d.proj_error_norm;
      a.max_proj_error = std::max(a.max_proj_error, d.proj_error_norm);
      a.mean_w_norm += d.w_norm;
      a.max_w_norm = std::max(a.max_w_norm, d.w_norm);
      a.mean_copy_count += static_cast<double>(d.copy_count);
      a.max_copy_count = std::max(a.max_copy_count, d.copy_count);
    }
  }
  for (StepAggregate& a : out) {
    const auto c = static_cast<double>(a.trials);
    a.mean_proj_error /= c;
    a.mean_w_norm /= c;
    a.mean_copy_count /= c;
  }
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, unsigned threads) {
  if (cfg.trials < 1) throw InputError("experiment needs at least one trial");
  const auto start = std::chrono::steady_clock::now();

  const GeneratedGraph gen = generate_with_info(cfg.graph);
  const WeightedGraph& g = gen.graph;
  const StreamConfig base = StreamConfig::for_graph(g, cfg.params);

  ExperimentReport rep;
  rep.config = cfg;
  rep.config.params.seed = 0;
  rep.config.params.diagnostics = true;
  rep.regime = base.outside_theorem_constants() ? "stress" : "theorem";
  rep.n = base.n;
  rep.m = base.m;
  rep.kappa = base.kappa;
  rep.budget_n = base.budget_n;
  rep.theorem_budget = base.theorem_budget;
  rep.w_bound = quadratic_variation_bound(base.alpha, base.n, base.kappa, base.budget_n);
  rep.generator_redraws = gen.redraws;
  rep.generator_bridges = gen.bridges_added;
  rep.warnings = base.warnings;
  if (gen.bridges_added > 0) {
    rep.warnings.push_back("generator bridged " + std::to_string(gen.bridges_added) +
                           " components after " + std::to_string(kMaxRedraws) + " redraws");
  }

  const RandomTape master(cfg.master_seed);
  const auto trials = static_cast<std::size_t>(cfg.trials);
  rep.trial_results.resize(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      rep.trial_results[i] = run_trial(g, base, cfg.block_size, static_cast<std::int64_t>(i),
                                       master.derive_seed(i), rep.w_bound);
    }
  };
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const TrialResult& t : rep.trial_results) {
    rep.a_failures += t.any_a_event;
    rep.b_failures += t.any_b_event;
    rep.union_failures += t.failed;
    rep.error_trials += !t.error.empty();
    rep.w_bound_violations += t.w_bound_exceeded;
    rep.projection_counterexamples += t.projection_counterexamples;
    rep.final_spectral_failures += !t.final_spectral_pass;
  }
  const auto td = static_cast<double>(cfg.trials);
  rep.failure_rate = static_cast<double>(rep.union_failures) / td;
  rep.failure_ci = clopper_pearson(rep.union_failures, cfg.trials);
  rep.a_event_rate = static_cast<double>(rep.a_failures) / td;
  rep.a_event_ci = clopper_pearson(rep.a_failures, cfg.trials);
  rep.per_step = aggregate_steps(rep.trial_results);
  if (cfg.record_timing) {
    rep.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

bool acceptance_passed(const ExperimentReport& report) {
  return report.failure_rate <= report.config.params.delta && report.projection_counterexamples == 0;
}

}  // namespace respark
