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

#ifndef RESPARK_VERIFY_HPP
#define RESPARK_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "respark/graph.hpp"
#include "respark/linalg.hpp"
#include "respark/random_tape.hpp"
#include "respark/sparsifier.hpp"

namespace respark {

/// Slack added to eps by spectral_check.
inline constexpr double kSpectralSlack = 1e-9;

struct SpectralCheck {
  bool passed = false;
  /// max |lambda - 1| over the generalized eigenvalues on range(P).
  double worst_ratio = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Eigenvalues of L_G^{-1/2} L_H L_G^{-1/2} restricted to range(P); passes iff
/// all lie in [1 - eps, 1 + eps] up to kSpectralSlack. Throws
/// ConnectivityError for disconnected g and InputError for mismatched n.
SpectralCheck spectral_check(const WeightedGraph& h, const WeightedGraph& g, double eps);
SpectralCheck spectral_check(const Sparsifier& h, const WeightedGraph& g, double eps);
/// Same test against a prepared context. Component-wise contexts are
/// accepted; the check then runs on range(L_ref).
SpectralCheck spectral_check(const Laplacian& l_h, const ProjectionContext& ctx, double eps);

/// ||P - (1/N) sum_j sum_e (z/p~) v_e v_e^T||_2, summed over the reference
/// edges (edge ids of h index into ctx.reference()). Throws
/// ConnectivityError for a disconnected reference.
double projection_error(const Sparsifier& h, const ProjectionContext& ctx);
/// As projection_error but accepts component-wise contexts.
double projection_error_on_range(const Sparsifier& h, const ProjectionContext& ctx);

/// ||W_t|| with W_t = (1/N^2) sum_j sum_e sum_{s<=t}
///   (z_{s-1}/p~_{s-1}) (1/p~_s - 1/p~_{s-1}) (v_e^T v_e) v_e v_e^T,
/// where v_e is taken w.r.t. ctx. Throws InputError if the trace does
/// not reach step t or references edges outside ctx.
double quadratic_variation(const StreamTrace& trace, const ProjectionContext& ctx,
                           std::uint32_t t);

/// The W_t bound 9 alpha^2 n ln(kappa n) / N.
double quadratic_variation_bound(double alpha, int n, double kappa, std::int64_t budget_n);

struct CountEvent {
  std::size_t copy_count = 0;
  bool b_event = false;  // copy_count >= 3N
};

CountEvent count_event(const Sparsifier& h);

struct DiagnosticsRecord {
  std::uint32_t step = 0;
  std::size_t copy_count = 0;
  double proj_error_norm = 0.0;
  double w_norm = 0.0;
  std::int64_t budget_n = 0;
  bool a_event = false;  // proj_error_norm >= eps
  bool b_event = false;  // copy_count >= 3N
  /// Worst generalized-eigenvalue deviation from spectral_check on G_s.
  double worst_ratio = 0.0;
  bool spectral_pass = false;
  bool reference_connected = true;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

/// Full per-step diagnostics of h (= H_s) against G_s = first `arrived`
/// stream edges, with W computed on `trace` up to h.step().
DiagnosticsRecord diagnose_step(const Sparsifier& h, const WeightedGraph& g, std::size_t arrived,
                                const StreamTrace& trace, double eps);

/// CSV with columns step,copy_count,proj_error_norm,w_norm,budget_n,a_event,b_event.
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);
std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& in);

struct DominatingSample {
  double value = 1.0;       // the draw of 1/w_0
  double truncation = 1.0;  // alpha^2 / p_te
};

/// Inverse-c.d.f. draw of 1/w_0: min(1/(1-u), alpha^2/p_te) with u taken from
/// the tape at `index`. Throws InputError unless 0 < p_te <= 1 and alpha >= 1.
DominatingSample sample_dominating_w0(double p_te, double alpha, const RandomTape& tape,
                                      std::uint64_t index);
std::vector<double> sample_dominating_w0_batch(double p_te, double alpha, const RandomTape& tape,
                                               std::size_t count, std::uint64_t first_index = 0);

/// Mean of 1/w_0: 1 + ln(alpha^2 / p_te).
double dominating_w0_mean(double p_te, double alpha);

/// max_{s<=t} z_{s,e,j} / p~_{s,e} for every copy j of edge e, read off the
/// trace (before arrival z = p~ = 1).
std::vector<double> max_ratio_samples(const StreamTrace& trace, EdgeId e, std::uint32_t t);

inline constexpr std::size_t kDominanceMinSamples = 10000;

/// Dvoretzky-Kiefer-Wolfowitz half-width sqrt(ln(2/(1-confidence)) / (2 n)).
double dkw_band(std::size_t n, double confidence);

struct DominanceResult {
  bool dominated = false;
  /// max over grid of F_w0(a) - F_trace(a) (positive = w0 c.d.f. above).
  double max_excess = 0.0;
  double band = 0.0;
};

/// True iff F_{1/w0}(a) <= F_trace(a) + band at every sample point a, with the
/// band the sum of both DKW half-widths. Throws InputError below
/// kDominanceMinSamples samples per set.
DominanceResult dominance_check(std::span<const double> trace_samples,
                                std::span<const double> w0_samples, double confidence = 0.999);

}  // namespace respark

#endif  // RESPARK_VERIFY_HPP
