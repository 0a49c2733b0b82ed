#include "qtdg/benchmarks.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qtdg/airy.hpp"

namespace qtdg {

namespace {

/// d^j/dt^j cos(w t)
double cos_derivative(int j, double w, double t) {
  return std::pow(w, j) * std::cos(w * t + j * M_PI / 2);
}

Jet spherical_j1(const Jet& x) { return (sin(x) - x * cos(x)) / (x * x); }

void wire_exact(BenchmarkProblem& P) {
  P.has_exact = true;
  const Derivative d = P.u_derivative;
  const int n = P.n;
  const CoefficientField coeff = P.coeff;
  P.exact.v = [d, n](const STPoint& p) { return d(MultiIndex(n, {0, 0}, 1), p); };
  P.exact.sigma = [d, n, coeff](const STPoint& p) {
    const double ir = coeff.inv_rho(p.x);
    SpacePoint s{0.0, 0.0};
    for (int k = 0; k < n; ++k) s[k] = -ir * d(MultiIndex::unit(n, k), p);
    return s;
  };
  P.v0 = P.exact.v;
  P.sigma0 = P.exact.sigma;
}

BenchmarkProblem airy1d() {
  BenchmarkProblem P;
  P.name = "airy1d";
  P.n = 1;
  P.lo = {0.0, 0.0};
  P.hi = {5.0, 0.0};
  P.T = 5.0;
  P.coeff = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  P.u_derivative = [](const MultiIndex& i, const STPoint& p) {
    const Jet z = -Jet::variable(p.x[0], i.ix[0]) - 1.0;
    return airy_ai(z).derivative(i.ix[0]) * cos_derivative(i.it, 1.0, p.t);
  };
  wire_exact(P);
  return P;
}

BenchmarkProblem airy2d() {
  BenchmarkProblem P;
  P.name = "airy2d";
  P.n = 2;
  P.hi = {1.0, 1.0};
  P.T = 1.0;
  P.coeff = CoefficientField::affine(2, 1.0, 1.0, {1.0, 1.0});
  P.u_derivative = [](const MultiIndex& i, const STPoint& p) {
    const int m = i.ix[0] + i.ix[1];
    const Jet z = -Jet::variable(p.x[0] + p.x[1], m) - 1.0;
    return airy_ai(z).derivative(m) * cos_derivative(i.it, std::sqrt(2.0), p.t);
  };
  wire_exact(P);
  return P;
}

BenchmarkProblem power2d() {
  BenchmarkProblem P;
  P.name = "power2d";
  P.n = 2;
  P.hi = {1.0, 1.0};
  P.T = 1.0;
  P.coeff = CoefficientField::inverse_square(2, 1.0, {1.0, 1.0}, 1.0);
  const double a = 2.5;
  const double k = std::sqrt(2.0) * std::sqrt(a * (a - 1.0));
  P.u_derivative = [a, k](const MultiIndex& i, const STPoint& p) {
    const int m = i.ix[0] + i.ix[1];
    const double s = p.x[0] + p.x[1] + 1.0;
    double f = 1.0;
    for (int j = 0; j < m; ++j) f *= a - j;
    return f * std::pow(s, a - m) * std::pow(-k, i.it) * std::exp(-k * p.t);
  };
  wire_exact(P);
  return P;
}

BenchmarkProblem bessel1d() {
  BenchmarkProblem P;
  P.name = "bessel1d";
  P.n = 1;
  P.lo = {2.0, 0.0};
  P.hi = {3.0, 0.0};
  P.T = 1.0;
  P.coeff = CoefficientField::bessel();
  P.u_derivative = [](const MultiIndex& i, const STPoint& p) {
    return spherical_j1(Jet::variable(p.x[0], i.ix[0])).derivative(i.ix[0]) *
           cos_derivative(i.it, 1.0, p.t);
  };
  wire_exact(P);
  return P;
}

BenchmarkProblem pulse(int n) {
  BenchmarkProblem P;
  P.name = n == 2 ? "gaussian-pulse" : "gaussian-pulse-1d";
  P.n = n;
  P.hi = {1.0, n == 2 ? 1.0 : 0.0};
  P.T = 1.0;
  P.coeff = n == 2 ? CoefficientField::affine(2, 1.0, 1.0, {0.0, 1.0})
                   : CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  P.bc = BoundaryConditions::all(BoundaryKind::Neumann);
  const double d = std::pow(2.0, -5);
  P.v0 = [](const STPoint&) { return 0.0; };
  P.sigma0 = [d](const STPoint& p) {
    const double x = p.x[0];
    return SpacePoint{-(2.0 * x / (d * d)) * std::exp(-x * x / (d * d)), 0.0};
  };
  return P;
}

BenchmarkProblem hat() {
  BenchmarkProblem P;
  P.name = "hat";
  P.n = 1;
  P.lo = {-0.5, 0.0};
  P.hi = {0.5, 0.0};
  P.T = 0.1;
  P.coeff = CoefficientField::inverse_square(1, 1.0, {1.0, 0.0}, 1.0);
  P.bc = BoundaryConditions::all(BoundaryKind::Neumann);
  P.v0 = [](const STPoint& p) { return std::max(0.25 - std::abs(p.x[0]), 0.0); };
  P.sigma0 = [](const STPoint& p) { return SpacePoint{std::max(0.25 - std::abs(p.x[0]), 0.0), 0.0}; };
  return P;
}

}  // namespace

SpacePoint box_normal(int n, const SpacePoint& lo, const SpacePoint& hi, const SpacePoint& x) {
  SpacePoint nrm{0.0, 0.0};
  double best = 1e300;
  for (int k = 0; k < n; ++k) {
    const double dl = std::abs(x[k] - lo[k]), dh = std::abs(x[k] - hi[k]);
    if (dl < best) {
      best = dl;
      nrm = {0.0, 0.0};
      nrm[k] = -1.0;
    }
    if (dh < best) {
      best = dh;
      nrm = {0.0, 0.0};
      nrm[k] = 1.0;
    }
  }
  return nrm;
}

BoundaryData BenchmarkProblem::data(const DGParameters* params) const {
  BoundaryData d = BoundaryData::homogeneous();
  d.v0 = v0;
  d.sigma0 = sigma0;
  if (!has_exact) return d;
  const ExactSolution ex = exact;
  const int nn = n;
  const SpacePoint a = lo, b = hi;
  const CoefficientField c = coeff;
  const DGParameters P = params ? *params : DGParameters{};
  auto normal_flux = [ex, nn, a, b](const STPoint& p) {
    const SpacePoint s = ex.sigma(p);
    const SpacePoint nrm = box_normal(nn, a, b, p.x);
    return s[0] * nrm[0] + s[1] * nrm[1];
  };
  d.gD = ex.v;
  d.gN = normal_flux;
  d.gR = [ex, normal_flux, P, c](const STPoint& p) {
    return P.theta_at(c, p.x) * ex.v(p) - normal_flux(p);
  };
  return d;
}

double BenchmarkProblem::self_check(int points, unsigned seed) const {
  if (!has_exact) return 0.0;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < points; ++s) {
    STPoint p;
    for (int k = 0; k < n; ++k) p.x[k] = lo[k] + (hi[k] - lo[k]) * U(rng);
    p.t = T * U(rng);
    const double G = coeff.G(p.x), ir = coeff.inv_rho(p.x);
    const SpacePoint gir = coeff.grad_inv_rho(p.x);
    // div sigma + G v_t with sigma = -grad u / rho
    double div = 0.0;
    for (int k = 0; k < n; ++k) {
      MultiIndex kk = MultiIndex::unit(n, k);
      kk.ix[k] = 2;
      div -= gir[k] * u_derivative(MultiIndex::unit(n, k), p) + ir * u_derivative(kk, p);
    }
    const double utt = u_derivative(MultiIndex(n, {0, 0}, 2), p);
    const double scale = std::abs(G * utt) + std::abs(div) + 1.0;
    worst = std::max(worst, std::abs(div + G * utt) / scale);
  }
  return worst;
}

BenchmarkProblem benchmark(const std::string& name) {
  if (name == "airy1d" || name == "a") return airy1d();
  if (name == "airy2d" || name == "b") return airy2d();
  if (name == "power2d" || name == "c") return power2d();
  if (name == "bessel1d" || name == "d") return bessel1d();
  if (name == "gaussian-pulse") return pulse(2);
  if (name == "gaussian-pulse-1d") return pulse(1);
  if (name == "hat") return hat();
  throw std::invalid_argument("unknown benchmark: " + name);
}

std::vector<std::string> benchmark_names() {
  return {"airy1d", "airy2d", "power2d", "bessel1d", "gaussian-pulse", "gaussian-pulse-1d", "hat"};
}

}  // namespace qtdg
