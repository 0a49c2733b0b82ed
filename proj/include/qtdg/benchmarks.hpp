#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qtdg/analysis.hpp"

namespace qtdg {

using Derivative = std::function<double(const MultiIndex&, const STPoint&)>;

/// Test problem on Q = [lo, hi] x (0, T) with its data and, when known, exact solution.
struct BenchmarkProblem {
  std::string name;
  int n = 1;
  SpacePoint lo{0.0, 0.0}, hi{0.0, 0.0};
  double T = 1.0;
  CoefficientField coeff = CoefficientField::constant(1, 1.0, 1.0);
  BoundaryConditions bc;
  bool has_exact = false;
  ExactSolution exact;
  /// D^i u for the potential u with (v, sigma) = (u_t, -grad u / rho); empty without exact solution.
  Derivative u_derivative;
  ScalarData v0;
  VectorData sigma0;

  /// Initial and boundary data. Robin data use theta from params (default rule if null).
  BoundaryData data(const DGParameters* params = nullptr) const;
  /// Largest relative residual of div(grad u / rho) - G u_tt at random points of Q; the first
  /// equation of the system holds identically for (u_t, -grad u / rho). Zero without exact solution.
  double self_check(int points = 200, unsigned seed = 7) const;
};

/// airy1d, airy2d, power2d, bessel1d, gaussian-pulse, gaussian-pulse-1d, hat.
/// The letters a, b, c, d are accepted as aliases.
BenchmarkProblem benchmark(const std::string& name);
std::vector<std::string> benchmark_names();

/// Outward unit normal of the box [lo, hi] at the boundary point nearest to x.
SpacePoint box_normal(int n, const SpacePoint& lo, const SpacePoint& hi, const SpacePoint& x);

}  // namespace qtdg
