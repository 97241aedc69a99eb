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

#include <cmath>

#include <gtest/gtest.h>

#include "respark/resistance.hpp"
#include "test_util.hpp"

namespace respark {
namespace {

using testing::rel_frobenius;

TEST(PseudoFactorize, SingleEdge) {
  const Laplacian l = build_laplacian(WeightedGraph(2, {{0, 1, 1.0}}));
  const PseudoinverseFactors f = pseudo_factorize(l);
  EXPECT_EQ(f.nullity(), 1);
  EXPECT_NEAR(f.eigenvalues()(1), 2.0, 1e-14);
  EXPECT_LE(rel_frobenius(f.pinv(), l.matrix / 4.0), 1e-14);
  EXPECT_LE(rel_frobenius(l.matrix * f.pinv() * l.matrix, l.matrix), 1e-14);
}

TEST(PseudoFactorize, TriangleSpectrum) {
  const PseudoinverseFactors f = pseudo_factorize(build_laplacian(testing::triangle()));
  ASSERT_EQ(f.size(), 3);
  EXPECT_EQ(f.eigenvalues()(0), 0.0);
  EXPECT_NEAR(f.eigenvalues()(1), 3.0, 1e-13);
  EXPECT_NEAR(f.eigenvalues()(2), 3.0, 1e-13);
}

TEST(PseudoFactorize, ZeroMatrixGivesZeroFactors) {
  const PseudoinverseFactors f = pseudo_factorize(Laplacian{Eigen::MatrixXd::Zero(3, 3)});
  EXPECT_EQ(f.rank(), 0);
  EXPECT_EQ(f.pinv(), Eigen::MatrixXd::Zero(3, 3));
}

TEST(PseudoFactorize, RejectsIndefinite) {
  Eigen::Matrix2d m;
  m << 1, 0, 0, -1;
  EXPECT_THROW(pseudo_factorize(Laplacian{m}), NumericalError);
}

TEST(PseudoFactorize, MoorePenroseAndReconstruction) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const WeightedGraph g = testing::er(30, 0.25, seed, 0.2, 2.0);
    const Laplacian l = build_laplacian(g);
    const PseudoinverseFactors f = pseudo_factorize(l);
    const Eigen::MatrixXd lp = f.pinv();
    EXPECT_EQ(f.nullity(), 1);
    EXPECT_LE(rel_frobenius(f.reconstruct(), l.matrix), 1e-8);
    EXPECT_LE(rel_frobenius(l.matrix * lp * l.matrix, l.matrix), 1e-8);
    EXPECT_LE(rel_frobenius(lp * l.matrix * lp, lp), 1e-8);
    const Eigen::MatrixXd half = f.inv_sqrt();
    EXPECT_LE(rel_frobenius(half * half, lp), 1e-8);
  }
}

TEST(PseudoFactorize, DisconnectedGraphHasOneNullDirectionPerComponent) {
  const WeightedGraph g(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}});
  EXPECT_EQ(pseudo_factorize(build_laplacian(g)).nullity(), 2);
}

TEST(ProjectionMatrix, PathOfTwo) {
  const ProjectionContext ctx(WeightedGraph(2, {{0, 1, 1.0}}));
  const Eigen::MatrixXd p = projection_matrix(ctx);
  EXPECT_NEAR(p(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(p(0, 1), -0.5, 1e-14);
  EXPECT_NEAR(p(1, 0), -0.5, 1e-14);
  EXPECT_NEAR(p(1, 1), 0.5, 1e-14);
}

TEST(ProjectionMatrix, IdempotentWithTraceNMinusOne) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeightedGraph g = testing::er(20 + static_cast<int>(seed), 0.3, seed, 0.5, 1.0);
    const ProjectionContext ctx(g);
    const Eigen::MatrixXd p = projection_matrix(ctx);
    EXPECT_NEAR(p.trace(), g.num_vertices() - 1, 1e-8);
    EXPECT_LT(spectral_norm_symmetric(p * p - p), 1e-8);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(p);
    lu.setThreshold(1e-8);
    EXPECT_EQ(lu.rank(), g.num_vertices() - 1);
    const Eigen::MatrixXd want =
        Eigen::MatrixXd::Identity(g.num_vertices(), g.num_vertices()) -
        Eigen::MatrixXd::Constant(g.num_vertices(), g.num_vertices(), 1.0 / g.num_vertices());
    EXPECT_LT(spectral_norm_symmetric(p - want), 1e-8);
  }
}

TEST(ProjectionMatrix, RejectsDisconnectedReference) {
  const WeightedGraph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  EXPECT_THROW(ProjectionContext{g}, ConnectivityError);
  const ProjectionContext cw = ProjectionContext::component_wise(g);
  EXPECT_FALSE(cw.connected());
  EXPECT_THROW(projection_matrix(cw), ConnectivityError);
}

TEST(EdgeVector, NormIsLeverage) {
  const WeightedGraph g = testing::er(15, 0.4, 2, 0.3, 1.7);
  const ProjectionContext ctx(g);
  const auto r = exact_resistances(g, queries_for(g));
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const EdgeVector ev = ctx.edge_vector(static_cast<EdgeId>(e));
    EXPECT_NEAR(ev.vec.squaredNorm(), g.edges()[e].weight * r[e].r_tilde, 1e-10);
  }
}

TEST(LambdaMaxBound, DominatesSpectrum) {
  const PseudoinverseFactors p4 = pseudo_factorize(build_laplacian(testing::unit_path(4)));
  EXPECT_NEAR(p4.lambda_max(), 2.0 + std::sqrt(2.0), 1e-12);
  EXPECT_LE(p4.lambda_max(), lambda_max_bound(testing::unit_path(4)));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 5 + static_cast<int>(seed % 20);
    const WeightedGraph g = testing::er(n, 0.2 + 0.003 * static_cast<double>(seed), seed, 0.05, 2.5);
    const double top = pseudo_factorize(build_laplacian(g)).lambda_max();
    EXPECT_LE(top, lambda_max_bound(g) * (1.0 + 1e-12)) << "seed " << seed;
  }
}

}  // namespace
}  // namespace respark
