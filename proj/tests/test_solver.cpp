#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qtdg/solver.hpp"
#include "test_util.hpp"

using namespace qtdg;
using namespace qtdg::testing;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> x;
  for (int i = 0; i <= n; ++i) x.push_back(a + (b - a) * i / n);
  return x;
}

double max_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace

TEST(Solve, ReproducesQuadraticWave1D) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  BoundaryConditions bc;
  bc.side[0] = BoundaryKind::Neumann;
  bc.side[1] = BoundaryKind::Robin;
  const auto ex = quadratic_wave(1);
  for (const auto& b : {BoundaryConditions{}, bc}) {
    auto m = build_cartesian_1d(0.0, 1.0, 4, 1.0, 3, c, b);
    auto P = default_parameters(m, c);
    auto r = solve(m, SpaceKind::QW, 2, c, P, data_from(ex, 1, m.lo, m.hi, c, P));
    ASSERT_TRUE(r.report.ok) << r.report.failure;
    for (double x : {0.1, 0.5, 0.93})
      for (double t : {0.05, 0.5, 1.0}) {
        const auto f = r.solution.eval(STPoint{{x, 0.0}, t});
        EXPECT_NEAR(f.v, ex.v(STPoint{{x, 0.0}, t}), 1e-10);
        EXPECT_NEAR(f.sigma[0], ex.sigma(STPoint{{x, 0.0}, t})[0], 1e-10);
      }
  }
}

TEST(Solve, ReproducesQuadraticWave2D) {
  auto c = CoefficientField::constant(2, 1.0, 1.0);
  const auto ex = quadratic_wave(2);
  auto m = build_prism_2d(2, 0.5, 2, c);
  auto P = default_parameters(m, c);
  auto r = solve(m, SpaceKind::QW, 2, c, P, data_from(ex, 2, m.lo, m.hi, c, P));
  ASSERT_TRUE(r.report.ok);
  const STPoint q{{0.3, 0.8}, 0.4};
  const auto f = r.solution.eval(q);
  EXPECT_NEAR(f.v, ex.v(q), 1e-10);
  EXPECT_NEAR(f.sigma[1], ex.sigma(q)[1], 1e-10);
}

TEST(Solve, LinearSolutionWithVariableSpeed) {
  // u = x t + t solves G u_tt = u_xx for any G
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  ExactSolution ex{[](const STPoint& p) { return p.x[0] + 1.0; },
                   [](const STPoint& p) { return SpacePoint{-p.t, 0.0}; }};
  auto m = build_cartesian_1d(0.0, 2.0, 3, 1.0, 3, c);
  auto P = default_parameters(m, c);
  auto r = solve(m, SpaceKind::QW, 1, c, P, data_from(ex, 1, m.lo, m.hi, c, P));
  const STPoint q{{1.7, 0.0}, 0.9};
  EXPECT_NEAR(r.solution.eval(q).v, 2.7, 1e-10);
  EXPECT_NEAR(r.solution.eval(q).sigma[0], -0.9, 1e-10);
}

TEST(Solve, ReportCountsLayers) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 4, 1.0, 5, c);
  auto P = default_parameters(m, c);
  auto r = solve(m, SpaceKind::QW, 2, c, P, BoundaryData::homogeneous());
  ASSERT_EQ(r.report.layer_dofs.size(), 5u);
  int total = 0;
  for (int d : r.report.layer_dofs) total += d;
  EXPECT_EQ(total, r.solution.space().ndof);
  EXPECT_EQ(r.report.layer_elements[0], 4);
  // constant speed: all slabs share one factorization
  EXPECT_EQ(r.report.factorizations, 1);
  EXPECT_EQ(r.solution.coefficients().norm(), 0.0);
}

TEST(Solve, SlabReuseMatchesFreshFactorizations) {
  auto c = CoefficientField::constant(1, 1.0, 0.5);
  auto m = build_cartesian_1d(0.0, 1.0, 6, 1.0, 6, c);
  auto P = default_parameters(m, c);
  BoundaryData d = BoundaryData::homogeneous();
  d.v0 = [](const STPoint& p) { return std::sin(M_PI * p.x[0]); };
  d.gD = [](const STPoint& p) { return 0.1 * p.t; };
  SolveOptions fresh;
  fresh.reuse_slabs = false;
  auto a = solve(m, SpaceKind::QW, 3, c, P, d);
  auto b = solve(m, SpaceKind::QW, 3, c, P, d, fresh);
  EXPECT_EQ(a.report.factorizations, 1);
  EXPECT_EQ(b.report.factorizations, 6);
  EXPECT_LT(max_diff(a.solution.coefficients(), b.solution.coefficients()), 1e-12);
}

TEST(Solve, SparseAndDenseBlocksAgree) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  auto m = build_cartesian_1d(0.0, 1.0, 8, 1.0, 4, c);
  auto P = default_parameters(m, c);
  BoundaryData d = BoundaryData::homogeneous();
  d.v0 = [](const STPoint& p) { return p.x[0] * (1 - p.x[0]); };
  SolveOptions sparse;
  sparse.dense_limit = 0;
  auto a = solve(m, SpaceKind::QW, 2, c, P, d);
  auto b = solve(m, SpaceKind::QW, 2, c, P, d, sparse);
  ASSERT_TRUE(b.report.ok);
  EXPECT_LT(max_diff(a.solution.coefficients(), b.solution.coefficients()), 1e-11);
}

TEST(Solve, FlagsSingularLayer) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 2, c);
  auto P = default_parameters(m, c);
  SolveOptions o;
  o.pivot_tol = 1.0;
  auto r = solve(m, SpaceKind::QW, 2, c, P, BoundaryData::homogeneous(), o);
  EXPECT_FALSE(r.report.ok);
  EXPECT_NE(r.report.failure.find("layer 0"), std::string::npos);
}

TEST(Solve, TentsMatchMonolithicAndParallel) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  auto m = pitch_tents_1d(grid(0.0, 1.0, 16), 1.0, c, 0.9);
  auto P = default_parameters(m, c);
  BoundaryData d = BoundaryData::homogeneous();
  d.sigma0 = [](const STPoint& p) { return SpacePoint{std::exp(-40 * (p.x[0] - 0.5) * (p.x[0] - 0.5)), 0.0}; };
  auto seq = solve(m, SpaceKind::QW, 3, c, P, d);
  auto mono = solve_monolithic(m, SpaceKind::QW, 3, c, P, d);
  auto par = solve_tents_parallel(m, SpaceKind::QW, 3, c, P, d, 4);
  ASSERT_TRUE(seq.report.ok && mono.report.ok && par.report.ok);
  EXPECT_LT(max_diff(seq.solution.coefficients(), mono.solution.coefficients()), 1e-10);
  EXPECT_EQ((seq.solution.coefficients() - par.solution.coefficients()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(par.report.factorizations, static_cast<int>(m.elements.size()));
}

TEST(Solve, ParallelRejectsTimeLikeFaces) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 2, c);
  auto P = default_parameters(m, c);
  EXPECT_THROW(solve_tents_parallel(m, SpaceKind::QW, 1, c, P, BoundaryData::homogeneous(), 2),
               std::invalid_argument);
}

TEST(Solve, MonolithicMatchesSlabs) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  auto m = build_cartesian_1d(0.0, 1.0, 4, 1.0, 4, c);
  auto P = default_parameters(m, c);
  BoundaryData d = BoundaryData::homogeneous();
  d.v0 = [](const STPoint& p) { return std::cos(p.x[0]); };
  auto a = solve(m, SpaceKind::QW, 2, c, P, d);
  auto b = solve_monolithic(m, SpaceKind::QW, 2, c, P, d);
  EXPECT_LT(max_diff(a.solution.coefficients(), b.solution.coefficients()), 1e-10);
}

TEST(Condition, EstimatorBoundsExactValue) {
  std::mt19937 rng(3);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd A(30, 30);
    for (int i = 0; i < 30; ++i)
      for (int j = 0; j < 30; ++j) A(i, j) = N(rng);
    A.row(0) *= std::pow(10.0, trial);
    const Eigen::MatrixXd Ai = A.inverse();
    const double exact = A.cwiseAbs().colwise().sum().maxCoeff() * Ai.cwiseAbs().colwise().sum().maxCoeff();
    const double est = condition_estimate(A);
    EXPECT_LE(est, exact * (1 + 1e-10));
    EXPECT_GE(est, exact / 3);
    const double est_s = condition_estimate(Eigen::SparseMatrix<double>(A.sparseView()));
    EXPECT_NEAR(est_s, est, 1e-8 * est);
  }
  EXPECT_NEAR(condition_estimate(Eigen::MatrixXd::Identity(5, 5)), 1.0, 1e-14);
}

TEST(Condition, FirstLayerMatrixIsFirstBlock) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 3, 1.0, 2, c);
  auto P = default_parameters(m, c);
  auto S = build_discrete_space(m, c, SpaceKind::QW, 2);
  const auto A = first_layer_matrix(m, S, c, P);
  EXPECT_EQ(A.rows(), 3 * S.dim(0));
  SolveOptions o;
  o.estimate_condition = true;
  auto r = solve(m, SpaceKind::QW, 2, c, P, BoundaryData::homogeneous(), o);
  EXPECT_NEAR(r.report.cond_estimate, condition_estimate(A), 1e-12 * r.report.cond_estimate);
  EXPECT_GE(r.report.cond_estimate, 1.0);
}

TEST(Locate, Cartesian) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 2.0, 4, 1.0, 2, c);
  auto sol = empty_solution(m, c, SpaceKind::QW, 1);
  EXPECT_EQ(sol.locate(STPoint{{0.1, 0.0}, 0.1}), 0);
  EXPECT_EQ(sol.locate(STPoint{{1.9, 0.0}, 0.9}), 7);
  // interfaces belong to the earlier / left element
  EXPECT_EQ(sol.locate(STPoint{{0.5, 0.0}, 0.2}), 0);
  EXPECT_EQ(sol.locate(STPoint{{0.7, 0.0}, 0.5}), 1);
  EXPECT_EQ(sol.locate(STPoint{{0.0, 0.0}, 0.0}), 0);
  EXPECT_EQ(sol.locate(STPoint{{2.0, 0.0}, 1.0}), 7);
  EXPECT_EQ(sol.locate(STPoint{{2.1, 0.0}, 0.5}), -1);
  EXPECT_EQ(sol.locate(STPoint{{1.0, 0.0}, 1.1}), -1);
  EXPECT_THROW(sol.eval(STPoint{{-1.0, 0.0}, 0.5}), std::out_of_range);
}

TEST(Locate, PrismContainsPoint) {
  auto c = CoefficientField::constant(2, 1.0, 1.0);
  auto m = build_prism_2d(4, 1.0, 3, c);
  auto sol = empty_solution(m, c, SpaceKind::QW, 1);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int s = 0; s < 200; ++s) {
    const STPoint p{{U(rng), U(rng)}, U(rng)};
    const int e = sol.locate(p);
    ASSERT_GE(e, 0);
    const auto& v = m.elements[e].vertices;
    EXPECT_GE(p.t, v[0].t - 1e-14);
    EXPECT_LE(p.t, v[3].t + 1e-14);
    // barycentric coordinates of the bottom triangle
    const double x0 = v[0].x[0], y0 = v[0].x[1];
    const double a = v[1].x[0] - x0, b = v[2].x[0] - x0, cc = v[1].x[1] - y0, d = v[2].x[1] - y0;
    const double det = a * d - b * cc;
    const double l1 = ((p.x[0] - x0) * d - b * (p.x[1] - y0)) / det;
    const double l2 = (a * (p.x[1] - y0) - cc * (p.x[0] - x0)) / det;
    EXPECT_GE(l1, -1e-12);
    EXPECT_GE(l2, -1e-12);
    EXPECT_LE(l1 + l2, 1 + 1e-12);
  }
}

TEST(Locate, TentsContainPoint) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  auto m = pitch_tents_1d(grid(0.0, 1.0, 10), 1.0, c, 0.9);
  auto sol = empty_solution(m, c, SpaceKind::QW, 1);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int s = 0; s < 300; ++s) {
    const STPoint p{{U(rng), 0.0}, U(rng)};
    const int e = sol.locate(p);
    ASSERT_GE(e, 0);
    int first = -1;
    for (const auto& K : m.elements) {
      // brute-force oracle: signed areas of the polygon edges
      bool in = true;
      const auto& v = K.vertices;
      for (std::size_t a = 0; a < v.size(); ++a) {
        const auto& P = v[a];
        const auto& Q = v[(a + 1) % v.size()];
        if ((Q.x[0] - P.x[0]) * (p.t - P.t) - (Q.t - P.t) * (p.x[0] - P.x[0]) < -1e-12) in = false;
      }
      if (in) {
        first = K.id;
        break;
      }
    }
    EXPECT_EQ(e, first);
  }
}
