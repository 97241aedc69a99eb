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

#include "respark/resistance.hpp"

#include <algorithm>
#include <cmath>

namespace respark {

std::string to_string(AccuracyMode mode) {
  switch (mode) {
    case AccuracyMode::kExact:
      return "exact";
    case AccuracyMode::kFromSparsifier:
      return "sparsifier";
    case AccuracyMode::kInjectedNoise:
      return "noisy";
  }
  return "exact";
}

AccuracyMode parse_accuracy_mode(const std::string& text) {
  if (text == "exact") return AccuracyMode::kExact;
  if (text == "sparsifier") return AccuracyMode::kFromSparsifier;
  if (text == "noisy") return AccuracyMode::kInjectedNoise;
  throw InputError("unknown resistance mode '" + text + "' (exact|sparsifier|noisy)");
}

std::string to_string(SolverBackend backend) {
  return backend == SolverBackend::kConjugateGradient ? "cg" : "dense";
}

SolverBackend parse_solver_backend(const std::string& text) {
  if (text == "dense") return SolverBackend::kDense;
  if (text == "cg") return SolverBackend::kConjugateGradient;
  throw InputError("unknown solver backend '" + text + "' (dense|cg)");
}

void AccuracyModel::validate() const {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw InputError("alpha must be finite and >= 1");
}

ResistanceEstimate exact_resistance(const PseudoinverseFactors& factors,
                                    const Components& components, const ResistanceQuery& q) {
  if (components.label.at(q.u) != components.label.at(q.v)) {
    throw ConnectivityError("edge " + std::to_string(q.edge) +
                            ": endpoints in different components (infinite resistance)");
  }
  return ResistanceEstimate{q.edge, factors.pinv_quadratic(q.u, q.v), 1.0};
}

std::vector<ResistanceQuery> queries_for(const WeightedGraph& g) {
  std::vector<ResistanceQuery> out;
  out.reserve(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    out.push_back({static_cast<EdgeId>(i), e.u, e.v});
  }
  return out;
}

namespace {

std::vector<ResistanceEstimate> solve_all(int n, std::span<const Edge> edges,
                                          std::span<const ResistanceQuery> queries,
                                          SolverBackend backend, double alpha_tag) {
  std::vector<ResistanceEstimate> out;
  out.reserve(queries.size());
  if (backend == SolverBackend::kConjugateGradient) {
    const IterativeResistanceSolver solver(n, edges);
    for (const ResistanceQuery& q : queries) {
      out.push_back({q.edge, solver.resistance(q.u, q.v), alpha_tag});
    }
    return out;
  }
  const Components comps = connected_components(n, edges);
  const PseudoinverseFactors factors = pseudo_factorize(laplacian_of(n, edges));
  for (const ResistanceQuery& q : queries) {
    ResistanceEstimate r = exact_resistance(factors, comps, q);
    r.alpha = alpha_tag;
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<ResistanceEstimate> exact_resistances(const WeightedGraph& g,
                                                  std::span<const ResistanceQuery> queries,
                                                  SolverBackend backend) {
  return solve_all(g.num_vertices(), g.edges(), queries, backend, 1.0);
}

std::vector<ResistanceEstimate> resistances_from_sparsifier(
    int n, std::span<const Edge> combined, std::span<const ResistanceQuery> targets, double eps,
    SolverBackend backend) {
  if (!(eps >= 0.0 && eps < 1.0)) throw InputError("resistances_from_sparsifier: eps must be in [0,1)");
  return solve_all(n, combined, targets, backend, 1.0 / (1.0 - eps));
}

std::vector<ResistanceEstimate> inject_alpha_noise(std::span<const ResistanceEstimate> estimates,
                                                   const AccuracyModel& model,
                                                   std::uint32_t step) {
  model.validate();
  std::vector<ResistanceEstimate> out(estimates.begin(), estimates.end());
  if (model.alpha == 1.0) return out;
  const RandomTape tape(model.noise_seed);
  const double lo = 1.0 / model.alpha;
  const double hi = model.alpha;
  for (ResistanceEstimate& r : out) {
    const double u = tape.uniform(step, static_cast<std::uint32_t>(r.edge), 0, TapeStream::kNoise);
    r.r_tilde *= lo + (hi - lo) * u;
    r.alpha = model.alpha;
  }
  return out;
}

IterativeResistanceSolver::IterativeResistanceSolver(int n, std::span<const Edge> edges,
                                                     double tolerance)
    : components_(connected_components(n, edges)), local_index_(static_cast<std::size_t>(n), -1) {
  systems_.resize(static_cast<std::size_t>(components_.count));
  std::vector<bool> has_root(systems_.size(), false);
  for (Vertex v = 0; v < n; ++v) {
    ComponentSystem& sys = systems_[components_.label[v]];
    if (!has_root[components_.label[v]]) {
      has_root[components_.label[v]] = true;
      sys.root = v;
    } else {
      local_index_[v] = sys.size++;
    }
  }
  std::vector<std::vector<Eigen::Triplet<double>>> triplets(systems_.size());
  for (const Edge& e : edges) {
    auto& t = triplets[components_.label[e.u]];
    const int iu = local_index_[e.u];
    const int iv = local_index_[e.v];
    if (iu >= 0) t.emplace_back(iu, iu, e.weight);
    if (iv >= 0) t.emplace_back(iv, iv, e.weight);
    if (iu >= 0 && iv >= 0) {
      t.emplace_back(iu, iv, -e.weight);
      t.emplace_back(iv, iu, -e.weight);
    }
  }
  for (std::size_t c = 0; c < systems_.size(); ++c) {
    ComponentSystem& sys = systems_[c];
    if (sys.size == 0) continue;
    sys.matrix.resize(sys.size, sys.size);
    sys.matrix.setFromTriplets(triplets[c].begin(), triplets[c].end());
    sys.solver = std::make_unique<Solver>();
    sys.solver->setTolerance(tolerance);
    sys.solver->setMaxIterations(std::max(10 * sys.size, 100));
    sys.solver->compute(sys.matrix);
  }
}

double IterativeResistanceSolver::resistance(Vertex u, Vertex v) const {
  if (components_.label.at(u) != components_.label.at(v)) {
    throw ConnectivityError("endpoints in different components (infinite resistance)");
  }
  if (u == v) return 0.0;
  const ComponentSystem& sys = systems_[components_.label[u]];
  Eigen::VectorXd b = Eigen::VectorXd::Zero(sys.size);
  if (local_index_[u] >= 0) b(local_index_[u]) += 1.0;
  if (local_index_[v] >= 0) b(local_index_[v]) -= 1.0;
  const Eigen::VectorXd x = sys.solver->solve(b);
  if (sys.solver->info() != Eigen::Success) throw NumericalError("conjugate gradient did not converge");
  return b.dot(x);
}

}  // namespace respark
