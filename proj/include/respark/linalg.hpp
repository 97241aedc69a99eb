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

#ifndef RESPARK_LINALG_HPP
#define RESPARK_LINALG_HPP

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "respark/graph.hpp"

namespace respark {

inline constexpr double kDefaultNullTolerance = 1e-10;

/// Raised when a matrix that must be PSD has a clearly negative eigenvalue.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigendecomposition L = U diag(lambda) U^T of a symmetric PSD matrix with
/// eigenvalues below null_tolerance * lambda_max clamped to exactly zero.
/// All pseudoinverse quantities (L^+, L^{-1/2}, projections onto the range)
/// are derived from it.
class PseudoinverseFactors {
 public:
  const Eigen::MatrixXd& eigenvectors() const { return vectors_; }
  /// Ascending, with the clamped ones stored as 0.
  const Eigen::VectorXd& eigenvalues() const { return values_; }
  double null_tolerance() const { return null_tolerance_; }
  double lambda_max() const { return values_.size() ? values_(values_.size() - 1) : 0.0; }
  int size() const { return static_cast<int>(values_.size()); }
  /// Number of eigenvalues treated as zero.
  int nullity() const { return first_nonzero_; }
  int rank() const { return size() - first_nonzero_; }

  Eigen::VectorXd apply_pinv(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_inv_sqrt(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd pinv() const;
  Eigen::MatrixXd inv_sqrt() const;
  /// Orthogonal projection onto range(L), i.e. L L^+.
  Eigen::MatrixXd range_projection() const;
  /// Columns of U spanning range(L).
  Eigen::MatrixXd range_basis() const;
  Eigen::MatrixXd reconstruct() const;

  /// (chi_u - chi_v)^T L^+ (chi_u - chi_v) without forming L^+.
  double pinv_quadratic(Vertex u, Vertex v) const;

  friend PseudoinverseFactors pseudo_factorize(const Laplacian& l, double null_tolerance);

 private:
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd values_;
  double null_tolerance_ = kDefaultNullTolerance;
  int first_nonzero_ = 0;
};

/// Throws NumericalError when some eigenvalue is below
/// -null_tolerance * lambda_max. The zero matrix yields all-zero factors.
PseudoinverseFactors pseudo_factorize(const Laplacian& l,
                                      double null_tolerance = kDefaultNullTolerance);

/// sqrt(a_e) L^{-1/2} b_e for one edge of a reference graph.
struct EdgeVector {
  EdgeId edge = 0;
  Vertex u = 0;
  Vertex v = 0;
  Eigen::VectorXd vec;
};

/// Reference-graph data for projection-error computations: factors of the
/// reference Laplacian, L^{-1/2}, and the edge vectors v_e.
class ProjectionContext {
 public:
  /// Throws ConnectivityError if `reference` is disconnected.
  explicit ProjectionContext(const WeightedGraph& reference,
                             double null_tolerance = kDefaultNullTolerance);

  /// Accepts a disconnected reference; every quantity then lives on
  /// range(L_ref), which is the per-component construction.
  static ProjectionContext component_wise(const WeightedGraph& reference,
                                          double null_tolerance = kDefaultNullTolerance);

  int n() const { return n_; }
  bool connected() const { return factors_.nullity() == 1; }
  const WeightedGraph& reference() const { return reference_; }
  const PseudoinverseFactors& factors() const { return factors_; }
  const Eigen::MatrixXd& inv_sqrt() const { return inv_sqrt_; }

  /// sqrt(weight) L^{-1/2} (chi_u - chi_v): edge vector for an arbitrary pair.
  Eigen::VectorXd edge_vector(Vertex u, Vertex v, double weight) const;
  EdgeVector edge_vector(EdgeId e) const;

 private:
  ProjectionContext(const WeightedGraph& reference, double null_tolerance, bool require_connected);

  int n_ = 0;
  WeightedGraph reference_;
  PseudoinverseFactors factors_;
  Eigen::MatrixXd inv_sqrt_;
};

/// P = sum_e v_e v_e^T over the reference edges. Throws ConnectivityError
/// for a component-wise context on a disconnected graph.
Eigen::MatrixXd projection_matrix(const ProjectionContext& ctx);

/// Largest absolute eigenvalue of a symmetric matrix.
double spectral_norm_symmetric(const Eigen::MatrixXd& m);

}  // namespace respark

#endif  // RESPARK_LINALG_HPP
