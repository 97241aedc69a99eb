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

#include "respark/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace respark {

PseudoinverseFactors pseudo_factorize(const Laplacian& l, double null_tolerance) {
  const Eigen::MatrixXd& a = l.matrix;
  if (a.rows() != a.cols()) throw InputError("pseudo_factorize: matrix is not square");
  if (!(null_tolerance >= 0.0)) throw InputError("pseudo_factorize: null_tolerance must be >= 0");

  PseudoinverseFactors f;
  f.null_tolerance_ = null_tolerance;
  const Eigen::Index n = a.rows();
  if (n == 0) return f;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolve did not converge");
  f.vectors_ = solver.eigenvectors();
  f.values_ = solver.eigenvalues();

  const double top = std::max(f.values_(n - 1), 0.0);
  const double cutoff = null_tolerance * top;
  if (f.values_(0) < -cutoff && top > 0.0) {
    throw NumericalError("matrix is not PSD: eigenvalue " + std::to_string(f.values_(0)) +
                         " below -tol*lambda_max");
  }
  int zeros = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (top == 0.0 || f.values_(i) <= cutoff) {
      f.values_(i) = 0.0;
      ++zeros;
    }
  }
  f.first_nonzero_ = zeros;
  return f;
}

Eigen::VectorXd PseudoinverseFactors::apply_pinv(const Eigen::VectorXd& x) const {
  Eigen::VectorXd coeff = vectors_.transpose() * x;
  for (int i = 0; i < size(); ++i) coeff(i) = i < first_nonzero_ ? 0.0 : coeff(i) / values_(i);
  return vectors_ * coeff;
}

Eigen::VectorXd PseudoinverseFactors::apply_inv_sqrt(const Eigen::VectorXd& x) const {
  Eigen::VectorXd coeff = vectors_.transpose() * x;
  for (int i = 0; i < size(); ++i) {
    coeff(i) = i < first_nonzero_ ? 0.0 : coeff(i) / std::sqrt(values_(i));
  }
  return vectors_ * coeff;
}

namespace {

Eigen::MatrixXd spectral_function(const Eigen::MatrixXd& u, const Eigen::VectorXd& lambda,
                                  int first, double (*fn)(double)) {
  const int n = static_cast<int>(lambda.size());
  const int k = n - first;
  if (k <= 0) return Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd scaled = u.rightCols(k);
  for (int i = 0; i < k; ++i) scaled.col(i) *= fn(lambda(first + i));
  return scaled * u.rightCols(k).transpose();
}

}  // namespace

Eigen::MatrixXd PseudoinverseFactors::pinv() const {
  return spectral_function(vectors_, values_, first_nonzero_, [](double x) { return 1.0 / x; });
}

Eigen::MatrixXd PseudoinverseFactors::inv_sqrt() const {
  return spectral_function(vectors_, values_, first_nonzero_,
                           [](double x) { return 1.0 / std::sqrt(x); });
}

Eigen::MatrixXd PseudoinverseFactors::range_projection() const {
  return spectral_function(vectors_, values_, first_nonzero_, [](double) { return 1.0; });
}

Eigen::MatrixXd PseudoinverseFactors::range_basis() const {
  return vectors_.rightCols(rank());
}

Eigen::MatrixXd PseudoinverseFactors::reconstruct() const {
  return vectors_ * values_.asDiagonal() * vectors_.transpose();
}

double PseudoinverseFactors::pinv_quadratic(Vertex u, Vertex v) const {
  double acc = 0.0;
  for (int i = first_nonzero_; i < size(); ++i) {
    const double d = vectors_(u, i) - vectors_(v, i);
    acc += d * d / values_(i);
  }
  return acc;
}

ProjectionContext::ProjectionContext(const WeightedGraph& reference, double null_tolerance)
    : ProjectionContext(reference, null_tolerance, true) {}

ProjectionContext ProjectionContext::component_wise(const WeightedGraph& reference,
                                                    double null_tolerance) {
  return ProjectionContext(reference, null_tolerance, false);
}

ProjectionContext::ProjectionContext(const WeightedGraph& reference, double null_tolerance,
                                     bool require_connected)
    : n_(reference.num_vertices()), reference_(reference) {
  const int components = connected_components(reference).count;
  if (require_connected && (reference.num_edges() == 0 || components != 1)) {
    throw ConnectivityError("projection context needs a connected reference graph");
  }
  factors_ = pseudo_factorize(laplacian_of(n_, reference.edges()), null_tolerance);
  if (factors_.nullity() != components) {
    throw ConnectivityError("reference Laplacian has " + std::to_string(factors_.nullity()) +
                            " null directions, expected " + std::to_string(components));
  }
  inv_sqrt_ = factors_.inv_sqrt();
}

Eigen::VectorXd ProjectionContext::edge_vector(Vertex u, Vertex v, double weight) const {
  return std::sqrt(weight) * (inv_sqrt_.col(u) - inv_sqrt_.col(v));
}

EdgeVector ProjectionContext::edge_vector(EdgeId e) const {
  const Edge& edge = reference_.edge(e);
  return EdgeVector{e, edge.u, edge.v, edge_vector(edge.u, edge.v, edge.weight)};
}

Eigen::MatrixXd projection_matrix(const ProjectionContext& ctx) {
  if (!ctx.connected()) throw ConnectivityError("projection_matrix: disconnected reference graph");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(ctx.n(), ctx.n());
  for (const Edge& e : ctx.reference().edges()) {
    const Eigen::VectorXd v = ctx.edge_vector(e.u, e.v, e.weight);
    p.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  return p.selfadjointView<Eigen::Lower>();
}

double spectral_norm_symmetric(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolve did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace respark
