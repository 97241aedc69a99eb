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

#ifndef RESPARK_EXPERIMENT_HPP
#define RESPARK_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "respark/generators.hpp"
#include "respark/sparsifier.hpp"
#include "respark/verify.hpp"

namespace respark {

inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  GeneratorSpec graph;
  /// Stream knobs; params.seed is replaced per trial by a seed derived from
  /// master_seed.
  StreamParams params;
  std::int64_t trials = 1;
  std::optional<std::int64_t> block_size;
  std::uint64_t master_seed = 0;
  bool record_timing = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct TrialResult {
  std::int64_t index = 0;
  std::uint64_t seed = 0;
  bool any_a_event = false;
  bool any_b_event = false;
  /// any_a_event || any_b_event || error.
  bool failed = false;
  /// Steps with proj_error_norm <= eps whose spectral check failed.
  std::int64_t projection_counterexamples = 0;
  double max_w_norm = 0.0;
  bool w_bound_exceeded = false;
  bool final_spectral_pass = false;
  std::string error;
  std::vector<DiagnosticsRecord> steps;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct StepAggregate {
  std::uint32_t step = 0;
  std::int64_t trials = 0;  // trials that reached this step
  double mean_proj_error = 0.0;
  double max_proj_error = 0.0;
  double mean_w_norm = 0.0;
  double max_w_norm = 0.0;
  double mean_copy_count = 0.0;
  std::size_t max_copy_count = 0;

  friend bool operator==(const StepAggregate&, const StepAggregate&) = default;
};

struct BinomialInterval {
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const BinomialInterval&, const BinomialInterval&) = default;
};

/// Exact two-sided Clopper-Pearson interval for k successes in t trials.
BinomialInterval clopper_pearson(std::int64_t k, std::int64_t t, double confidence = 0.95);

struct ExperimentReport {
  int schema_version = kReportSchemaVersion;
  ExperimentConfig config;
  /// "theorem" (budget from the formula) or "stress" (overridden budget).
  std::string regime;
  int n = 0;
  std::int64_t m = 0;
  double kappa = 1.0;
  std::int64_t budget_n = 0;
  std::int64_t theorem_budget = 0;
  double w_bound = 0.0;
  int generator_redraws = 0;
  int generator_bridges = 0;
  std::vector<std::string> warnings;

  std::int64_t a_failures = 0;
  std::int64_t b_failures = 0;
  std::int64_t union_failures = 0;
  std::int64_t error_trials = 0;
  std::int64_t w_bound_violations = 0;
  std::int64_t projection_counterexamples = 0;
  std::int64_t final_spectral_failures = 0;
  double failure_rate = 0.0;
  BinomialInterval failure_ci;
  double a_event_rate = 0.0;
  BinomialInterval a_event_ci;

  std::vector<TrialResult> trial_results;  // ordered by trial index
  std::vector<StepAggregate> per_step;
  std::optional<double> wall_clock_seconds;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// T independent seeded stream runs on the graph generated from
/// cfg.graph, each verified at every step. Trial errors count as failures.
/// Throws InputError for trials < 1 or an invalid stream configuration.
/// `threads` = 0 uses the hardware concurrency; the report does not depend
/// on it.
ExperimentReport run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

/// Per-step mean / max over trials, in trial-index order.
std::vector<StepAggregate> aggregate_steps(std::span<const TrialResult> trials);

/// Failure rate <= delta and no projection-error/spectral-check
/// counterexamples.
bool acceptance_passed(const ExperimentReport& report);

std::string emit_report_json(const ExperimentReport& report);
ExperimentReport parse_report_json(const std::string& text);

/// One row per (trial, step): trial, seed, followed by the diagnostics
/// columns and worst_ratio, spectral_pass.
void emit_report_csv(std::ostream& out, const ExperimentReport& report);
/// Trial rows read back from emit_report_csv output (steps and seeds only).
std::vector<TrialResult> read_report_csv(std::istream& in);

}  // namespace respark

#endif  // RESPARK_EXPERIMENT_HPP
