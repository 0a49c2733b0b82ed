#pragma once

#include <Eigen/Dense>
#include <random>

#include "qtdg/benchmarks.hpp"

namespace qtdg::testing {

/// Elementwise least-squares fit of (v, sigma) into the discrete space; returns the largest
/// pointwise misfit.
inline double fit_exact(DiscreteSolution& sol, const ExactSolution& ex, int npts = 0) {
  const auto& mesh = sol.mesh();
  const auto& S = sol.space();
  const int q = npts > 0 ? npts : S.p + 3;
  const int n = mesh.n;
  double worst = 0.0;
  for (const auto& K : mesh.elements) {
    const auto pts = element_quadrature(mesh, K, q);
    const BasisValues V = sol.basis_values(K.id, pts, false);
    const int m = static_cast<int>(pts.size());
    Eigen::MatrixXd A((n + 1) * m, S.dim(K.id));
    Eigen::VectorXd b((n + 1) * m);
    A.topRows(m) = V.w;
    for (int k = 0; k < n; ++k) A.middleRows((k + 1) * m, m) = V.tau[k];
    for (int i = 0; i < m; ++i) {
      b(i) = ex.v(pts[i].p);
      const SpacePoint s = ex.sigma(pts[i].p);
      for (int k = 0; k < n; ++k) b((k + 1) * m + i) = s[k];
    }
    const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
    sol.coefficients().segment(S.offset[K.id], S.dim(K.id)) = x;
    worst = std::max(worst, (A * x - b).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline DiscreteSolution empty_solution(const SpaceTimeMesh& mesh, const CoefficientField& c,
                                       SpaceKind kind, int p) {
  return DiscreteSolution(mesh, std::make_shared<DiscreteSpace>(build_discrete_space(mesh, c, kind, p)), c);
}

inline void randomize(DiscreteSolution& sol, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int i = 0; i < sol.coefficients().size(); ++i) sol.coefficients()(i) = N(rng);
}

/// u = x1^2 + x2^2 + n t^2 with rho = G = 1 (c = 1).
inline ExactSolution quadratic_wave(int n) {
  ExactSolution e;
  e.v = [n](const STPoint& p) { return 2.0 * n * p.t; };
  e.sigma = [n](const STPoint& p) {
    return SpacePoint{-2.0 * p.x[0], n == 2 ? -2.0 * p.x[1] : 0.0};
  };
  return e;
}

/// Initial and boundary data generated by an exact solution on a box.
inline BoundaryData data_from(const ExactSolution& ex, int n, SpacePoint lo, SpacePoint hi,
                              const CoefficientField& c, const DGParameters& P) {
  BoundaryData d;
  d.v0 = ex.v;
  d.sigma0 = ex.sigma;
  d.gD = ex.v;
  auto flux = [=](const STPoint& p) {
    const SpacePoint s = ex.sigma(p), nrm = box_normal(n, lo, hi, p.x);
    return s[0] * nrm[0] + s[1] * nrm[1];
  };
  d.gN = flux;
  d.gR = [=](const STPoint& p) { return P.theta_at(c, p.x) * ex.v(p) - flux(p); };
  return d;
}

}  // namespace qtdg::testing
