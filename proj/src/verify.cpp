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

#include "respark/verify.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

namespace respark {

SpectralCheck spectral_check(const Laplacian& l_h, const ProjectionContext& ctx, double eps) {
  if (l_h.size() != ctx.n()) throw InputError("spectral_check: vertex counts differ");
  if (!(eps >= 0.0)) throw InputError("spectral_check: eps must be >= 0");
  const Eigen::MatrixXd basis = ctx.factors().range_basis();
  // Congruence with L^{-1/2}, then deflate the null directions of L_G.
  const Eigen::MatrixXd half = ctx.inv_sqrt() * basis;
  const Eigen::MatrixXd reduced = half.transpose() * l_h.matrix * half;
  SpectralCheck out;
  if (reduced.rows() == 0) {
    out.passed = true;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolve did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  out.min_eigenvalue = ev(0);
  out.max_eigenvalue = ev(ev.size() - 1);
  out.worst_ratio = std::max(std::abs(out.min_eigenvalue - 1.0), std::abs(out.max_eigenvalue - 1.0));
  out.passed = out.worst_ratio <= eps + kSpectralSlack;
  return out;
}

SpectralCheck spectral_check(const WeightedGraph& h, const WeightedGraph& g, double eps) {
  if (h.num_vertices() != g.num_vertices()) throw InputError("spectral_check: vertex counts differ");
  const ProjectionContext ctx(g);
  return spectral_check(laplacian_of(h.num_vertices(), h.edges()), ctx, eps);
}

SpectralCheck spectral_check(const Sparsifier& h, const WeightedGraph& g, double eps) {
  if (h.n() != g.num_vertices()) throw InputError("spectral_check: vertex counts differ");
  const ProjectionContext ctx(g);
  return spectral_check(h.laplacian(), ctx, eps);
}

double projection_error_on_range(const Sparsifier& h, const ProjectionContext& ctx) {
  if (h.n() != ctx.n()) throw InputError("projection_error: vertex counts differ");
  const WeightedGraph& ref = ctx.reference();
  const double big_n = static_cast<double>(h.budget_n());
  // Y = sum over reference edges of (1 - count_e / (N p~_e)) v_e v_e^T;
  // edges absent from H contribute their full v_e v_e^T.
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(ctx.n(), ctx.n());
  std::size_t matched = 0;
  for (std::size_t i = 0; i < ref.num_edges(); ++i) {
    const Edge& e = ref.edges()[i];
    double coeff = 1.0;
    if (const EdgeCopies* c = h.find(static_cast<EdgeId>(i))) {
      if (c->endpoints.u != e.u || c->endpoints.v != e.v) {
        throw InputError("projection_error: sparsifier edge " + std::to_string(i) +
                         " does not match the reference graph");
      }
      coeff -= static_cast<double>(c->alive.size()) / (big_n * c->p_tilde);
      ++matched;
    }
    if (coeff == 0.0) continue;
    const Eigen::VectorXd v = ctx.edge_vector(e.u, e.v, e.weight);
    y.selfadjointView<Eigen::Lower>().rankUpdate(v, coeff);
  }
  if (matched != h.entries().size()) {
    throw InputError("projection_error: sparsifier holds edges outside the reference graph");
  }
  const Eigen::MatrixXd full = y.selfadjointView<Eigen::Lower>();
  return spectral_norm_symmetric(full);
}

double projection_error(const Sparsifier& h, const ProjectionContext& ctx) {
  if (!ctx.connected()) throw ConnectivityError("projection_error: disconnected reference graph");
  return projection_error_on_range(h, ctx);
}

double quadratic_variation(const StreamTrace& trace, const ProjectionContext& ctx,
                           std::uint32_t t) {
  if (t > trace.steps.size()) {
    throw InputError("quadratic_variation: trace holds " + std::to_string(trace.steps.size()) +
                     " steps, asked for " + std::to_string(t));
  }
  const auto ref_edges = ctx.reference().num_edges();
  // Per-edge scalar coefficient of (v^T v) v v^T, accumulated over steps.
  std::vector<double> coeff(ref_edges, 0.0);
  std::vector<const EdgeStepTrace*> last(ref_edges, nullptr);
  for (std::uint32_t k = 0; k < t; ++k) {
    const StepTrace& st = trace.steps[k];
    if (st.step != k + 1) throw InputError("quadratic_variation: trace steps out of order");
    for (const EdgeStepTrace& et : st.edges) {
      if (et.edge < 0 || static_cast<std::size_t>(et.edge) >= ref_edges) {
        throw InputError("quadratic_variation: trace edge outside the reference graph");
      }
      coeff[et.edge] += static_cast<double>(et.alive_before) / et.p_prev *
                        (1.0 / et.p_new - 1.0 / et.p_prev);
      last[et.edge] = &et;
    }
  }
  const double inv_n2 = 1.0 / (static_cast<double>(trace.budget_n) * trace.budget_n);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(ctx.n(), ctx.n());
  for (std::size_t e = 0; e < ref_edges; ++e) {
    if (coeff[e] == 0.0) continue;
    const Edge& ed = ctx.reference().edges()[e];
    const Eigen::VectorXd v = ctx.edge_vector(ed.u, ed.v, ed.weight);
    w.selfadjointView<Eigen::Lower>().rankUpdate(v, inv_n2 * coeff[e] * v.squaredNorm());
  }
  const Eigen::MatrixXd full = w.selfadjointView<Eigen::Lower>();
  return spectral_norm_symmetric(full);
}

double quadratic_variation_bound(double alpha, int n, double kappa, std::int64_t budget_n) {
  return 9.0 * alpha * alpha * n * std::log(kappa * n) / static_cast<double>(budget_n);
}

CountEvent count_event(const Sparsifier& h) {
  CountEvent c;
  c.copy_count = h.copy_count();
  c.b_event = c.copy_count >= static_cast<std::size_t>(3 * h.budget_n());
  return c;
}

DiagnosticsRecord diagnose_step(const Sparsifier& h, const WeightedGraph& g, std::size_t arrived,
                                const StreamTrace& trace, double eps) {
  DiagnosticsRecord d;
  d.step = h.step();
  d.budget_n = h.budget_n();
  const CountEvent ce = count_event(h);
  d.copy_count = ce.copy_count;
  d.b_event = ce.b_event;
  if (arrived == 0) {
    d.spectral_pass = true;
    return d;
  }
  const ProjectionContext ctx = ProjectionContext::component_wise(g.prefix(arrived));
  d.reference_connected = ctx.connected();
  d.proj_error_norm = projection_error_on_range(h, ctx);
  d.w_norm = quadratic_variation(trace, ctx, h.step());
  d.a_event = d.proj_error_norm >= eps;
  const SpectralCheck sc = spectral_check(h.laplacian(), ctx, eps);
  d.worst_ratio = sc.worst_ratio;
  d.spectral_pass = sc.passed;
  return d;
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "step,copy_count,proj_error_norm,w_norm,budget_n,a_event,b_event\n";
  std::ostringstream row;
  row.precision(17);
  for (const DiagnosticsRecord& d : records) {
    row.str("");
    row << d.step << ',' << d.copy_count << ',' << d.proj_error_norm << ',' << d.w_norm << ','
        << d.budget_n << ',' << (d.a_event ? 1 : 0) << ',' << (d.b_event ? 1 : 0) << '\n';
    out << row.str();
  }
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("step,copy_count,proj_error_norm,w_norm,budget_n,a_event,b_event", 0) != 0) {
    throw InputError("diagnostics CSV: unexpected header");
  }
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    DiagnosticsRecord d;
    int a = 0;
    int b = 0;
    if (!(ls >> d.step >> d.copy_count >> d.proj_error_norm >> d.w_norm >> d.budget_n >> a >> b)) {
      throw InputError("diagnostics CSV: malformed row '" + line + "'");
    }
    d.a_event = a != 0;
    d.b_event = b != 0;
    out.push_back(d);
  }
  return out;
}

DominatingSample sample_dominating_w0(double p_te, double alpha, const RandomTape& tape,
                                      std::uint64_t index) {
  if (!(p_te > 0.0 && p_te <= 1.0)) throw InputError("sample_dominating_w0: p must be in (0, 1]");
  if (!(alpha >= 1.0)) throw InputError("sample_dominating_w0: alpha must be >= 1");
  const double cap = alpha * alpha / p_te;
  const double u = tape.uniform(static_cast<std::uint32_t>(index),
                                static_cast<std::uint32_t>(index >> 32), 0, TapeStream::kDominating);
  return DominatingSample{std::min(1.0 / (1.0 - u), cap), cap};
}

std::vector<double> sample_dominating_w0_batch(double p_te, double alpha, const RandomTape& tape,
                                               std::size_t count, std::uint64_t first_index) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(sample_dominating_w0(p_te, alpha, tape, first_index + i).value);
  }
  return out;
}

double dominating_w0_mean(double p_te, double alpha) {
  return 1.0 + std::log(alpha * alpha / p_te);
}

std::vector<double> max_ratio_samples(const StreamTrace& trace, EdgeId e, std::uint32_t t) {
  t = std::min<std::uint32_t>(t, static_cast<std::uint32_t>(trace.steps.size()));
  std::vector<double> out;
  std::uint32_t alive = 0;
  double ratio_alive = 1.0;
  bool arrived = false;
  for (std::uint32_t k = 0; k < t; ++k) {
    for (const EdgeStepTrace& et : trace.steps[k].edges) {
      if (et.edge != e) continue;
      // Copies dying now peaked at 1/p~ of the previous step.
      const std::uint32_t died = et.alive_before - et.alive_after;
      out.insert(out.end(), died, 1.0 / et.p_prev);
      alive = et.alive_after;
      ratio_alive = 1.0 / et.p_new;
      arrived = true;
    }
  }
  if (!arrived) return std::vector<double>(static_cast<std::size_t>(trace.budget_n), 1.0);
  out.insert(out.end(), alive, ratio_alive);
  return out;
}

double dkw_band(std::size_t n, double confidence) {
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

DominanceResult dominance_check(std::span<const double> trace_samples,
                                std::span<const double> w0_samples, double confidence) {
  if (trace_samples.size() < kDominanceMinSamples || w0_samples.size() < kDominanceMinSamples) {
    throw InputError("dominance_check: need at least " + std::to_string(kDominanceMinSamples) +
                     " samples per set");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw InputError("dominance_check: confidence must be in (0, 1)");
  }
  std::vector<double> a(trace_samples.begin(), trace_samples.end());
  std::vector<double> b(w0_samples.begin(), w0_samples.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  DominanceResult r;
  r.band = dkw_band(a.size(), confidence) + dkw_band(b.size(), confidence);
  // Walk the merged grid; F(x) = #{samples <= x} / size.
  std::size_t ia = 0;
  std::size_t ib = 0;
  double excess = -1.0;
  while (ia < a.size() || ib < b.size()) {
    const double x = ib == b.size() || (ia < a.size() && a[ia] <= b[ib]) ? a[ia] : b[ib];
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    const double fa = static_cast<double>(ia) / static_cast<double>(a.size());
    const double fb = static_cast<double>(ib) / static_cast<double>(b.size());
    excess = std::max(excess, fb - fa);
  }
  r.max_excess = excess;
  r.dominated = excess <= r.band;
  return r;
}

}  // namespace respark
