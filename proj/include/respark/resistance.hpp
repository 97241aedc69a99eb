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

#ifndef RESPARK_RESISTANCE_HPP
#define RESPARK_RESISTANCE_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include "respark/graph.hpp"
#include "respark/linalg.hpp"
#include "respark/random_tape.hpp"

namespace respark {

struct ResistanceEstimate {
  EdgeId edge = 0;
  double r_tilde = 0.0;
  /// Accuracy factor of the producing estimator (1 for the exact oracle).
  double alpha = 1.0;

  friend bool operator==(const ResistanceEstimate&, const ResistanceEstimate&) = default;
};

/// A query edge: id for bookkeeping plus its endpoints.
struct ResistanceQuery {
  EdgeId edge = 0;
  Vertex u = 0;
  Vertex v = 0;
};

enum class AccuracyMode { kExact, kFromSparsifier, kInjectedNoise };

std::string to_string(AccuracyMode mode);
AccuracyMode parse_accuracy_mode(const std::string& text);

struct AccuracyModel {
  double alpha = 1.0;
  AccuracyMode mode = AccuracyMode::kExact;
  std::uint64_t noise_seed = 0;

  /// Throws InputError on alpha < 1 or non-finite alpha.
  void validate() const;
};

enum class SolverBackend { kDense, kConjugateGradient };

std::string to_string(SolverBackend backend);
/// Accepts dense | cg.
SolverBackend parse_solver_backend(const std::string& text);

/// r = b_e^T L^+ b_e from a dense factorization. Throws ConnectivityError when
/// the endpoints are in different components (`components` labels the
/// factored graph).
ResistanceEstimate exact_resistance(const PseudoinverseFactors& factors,
                                    const Components& components, const ResistanceQuery& q);

/// Convenience: factor `g` once and answer every query.
std::vector<ResistanceEstimate> exact_resistances(const WeightedGraph& g,
                                                  std::span<const ResistanceQuery> queries,
                                                  SolverBackend backend = SolverBackend::kDense);

std::vector<ResistanceQuery> queries_for(const WeightedGraph& g);

/// Resistances in the combined graph H + Gamma (`combined` holds the
/// aggregated sparsifier edges followed by the new block). Values are exact in
/// the combined graph; they are tagged alpha = 1/(1 - eps), which is the
/// accuracy they carry relative to G whenever H is a (1 +- eps)-sparsifier.
std::vector<ResistanceEstimate> resistances_from_sparsifier(
    int n, std::span<const Edge> combined, std::span<const ResistanceQuery> targets, double eps,
    SolverBackend backend = SolverBackend::kDense);

/// Multiplies each estimate by a factor drawn uniformly from [1/alpha, alpha],
/// keyed by (step, edge) on the model's noise seed. Identity at alpha = 1.
std::vector<ResistanceEstimate> inject_alpha_noise(std::span<const ResistanceEstimate> estimates,
                                                   const AccuracyModel& model,
                                                   std::uint32_t step = 0);

/// Jacobi-preconditioned conjugate gradient on the grounded Laplacian of each
/// component (one vertex per component removed, leaving an SPD system).
class IterativeResistanceSolver {
 public:
  explicit IterativeResistanceSolver(int n, std::span<const Edge> edges, double tolerance = 1e-13);

  /// Throws ConnectivityError for endpoints in different components.
  double resistance(Vertex u, Vertex v) const;

 private:
  using SparseMatrix = Eigen::SparseMatrix<double>;
  using Solver = Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper>;

  struct ComponentSystem {
    Vertex root = 0;
    int size = 0;  // vertices minus the grounded root
    SparseMatrix matrix;
    std::unique_ptr<Solver> solver;
  };

  Components components_;
  std::vector<int> local_index_;  // -1 for roots
  std::vector<ComponentSystem> systems_;
};

}  // namespace respark

#endif  // RESPARK_RESISTANCE_HPP
