#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qtdg/airy.hpp"
#include "qtdg/benchmarks.hpp"
#include "test_util.hpp"

using namespace qtdg;
using namespace qtdg::testing;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> x;
  for (int i = 0; i <= n; ++i) x.push_back(a + (b - a) * i / n);
  return x;
}

const ExactSolution kZero{[](const STPoint&) { return 0.0; },
                          [](const STPoint&) { return SpacePoint{0.0, 0.0}; }};

/// u = sin(pi x) cos(pi t), energy pi^2 / 4 on (0, 1).
ExactSolution standing_wave() {
  return {[](const STPoint& p) { return -M_PI * std::sin(M_PI * p.x[0]) * std::sin(M_PI * p.t); },
          [](const STPoint& p) {
            return SpacePoint{-M_PI * std::cos(M_PI * p.x[0]) * std::cos(M_PI * p.t), 0.0};
          }};
}

}  // namespace

TEST(DGNorm, UnitFieldOnOneElement) {
  // w = 1, tau = 0: only the F0 and FT terms see it, 1/2 each
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 1, 1.0, 1, c);
  auto sol = empty_solution(m, c, SpaceKind::QW, 1);
  const ExactSolution one{[](const STPoint&) { return 1.0; },
                          [](const STPoint&) { return SpacePoint{0.0, 0.0}; }};
  ASSERT_LT(fit_exact(sol, one), 1e-12);
  const auto Z = zero_parameters(m, c);
  EXPECT_NEAR(dg_norm_error(sol, kZero, Z), 1.0, 1e-12);
  EXPECT_NEAR(dg_norm_error(sol, one, Z), 0.0, 1e-12);
  // Dirichlet sides add alpha * 1 * |face| each with alpha = 1
  EXPECT_NEAR(dg_norm(sol, default_parameters(m, c)), std::sqrt(3.0), 1e-12);
}

TEST(DGNorm, ZeroParametersActivation) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {0.5, 0.0});
  BoundaryConditions bc;
  bc.side[0] = BoundaryKind::Neumann;
  bc.side[1] = BoundaryKind::Dirichlet;
  auto m = build_cartesian_1d(0.0, 1.0, 3, 1.0, 3, c, bc);
  auto sol = empty_solution(m, c, SpaceKind::QW, 2);
  randomize(sol, 4);
  const auto Z = zero_parameters(m, c);
  const auto D = default_parameters(m, c);
  const auto z = dg_norm_terms(sol, nullptr, Z);
  const auto d = dg_norm_terms(sol, nullptr, D);
  // active under zero parameters
  EXPECT_GT(z.space_jump, 0.0);
  EXPECT_GT(z.initial_final, 0.0);
  EXPECT_EQ(z.space_jump, d.space_jump);
  EXPECT_EQ(z.initial_final, d.initial_final);
  // switched off
  EXPECT_EQ(z.time_jump, 0.0);
  EXPECT_EQ(z.dirichlet, 0.0);
  EXPECT_EQ(z.neumann, 0.0);
  EXPECT_EQ(z.volume, 0.0);
  EXPECT_GT(d.time_jump, 0.0);
  EXPECT_GT(d.dirichlet, 0.0);
  EXPECT_GT(d.neumann, 0.0);
  EXPECT_GT(d.volume, 0.0);
  EXPECT_LT(z.dg_squared(), d.dg_squared());
  // the plus norm needs positive parameters
  const auto dp = dg_norm_terms(sol, nullptr, D, true);
  EXPECT_GE(dp.dg_plus_squared(), dp.dg_squared());
  EXPECT_GT(dp.plus_space, 0.0);
}

TEST(DGNorm, RobinTermKeepsDefaultWeights) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 1, c, BoundaryConditions::all(BoundaryKind::Robin));
  auto sol = empty_solution(m, c, SpaceKind::QW, 1);
  randomize(sol, 8);
  EXPECT_GT(dg_norm_terms(sol, nullptr, zero_parameters(m, c)).robin, 0.0);
}

TEST(DGNorm, ExactSolutionHasZeroError) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 2, c);
  auto sol = empty_solution(m, c, SpaceKind::QW, 2);
  const auto ex = quadratic_wave(1);
  fit_exact(sol, ex);
  EXPECT_LT(dg_plus_norm_error(sol, ex, default_parameters(m, c)), 1e-11);
  EXPECT_LT(final_time_error(sol, ex), 1e-12);
}

TEST(Coercivity, EqualityOnCartesianMeshes) {
  std::vector<std::pair<SpaceTimeMesh, CoefficientField>> cases;
  {
    auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
    BoundaryConditions bc;
    bc.side[0] = BoundaryKind::Robin;
    bc.side[1] = BoundaryKind::Neumann;
    cases.emplace_back(build_cartesian_1d(0.0, 1.0, 3, 1.0, 2, c, bc), c);
  }
  {
    auto c = CoefficientField::affine(2, 1.0, 1.0, {1.0, 1.0});
    cases.emplace_back(build_prism_2d(2, 0.5, 2, c), c);
  }
  for (auto& [m, c] : cases) {
    const auto P = default_parameters(m, c);
    auto sol = empty_solution(m, c, SpaceKind::QW, 2);
    const auto data = BoundaryData::homogeneous();
    AssemblyContext ctx{m, sol.space(), c, P, data};
    for (unsigned s = 0; s < 25; ++s) {
      randomize(sol, 100 + s);
      const auto& x = sol.coefficients();
      const double a = bilinear_form(ctx, x, x);
      const double n2 = std::pow(dg_norm(sol, P), 2);
      EXPECT_LE(std::abs(a - n2), 1e-8 * n2);
    }
  }
}

TEST(Coercivity, InequalityOnTents) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  auto m = pitch_tents_1d(grid(0.0, 1.0, 8), 1.0, c, 0.8);
  const auto P = default_parameters(m, c);
  auto sol = empty_solution(m, c, SpaceKind::QW, 2);
  const auto data = BoundaryData::homogeneous();
  AssemblyContext ctx{m, sol.space(), c, P, data};
  for (unsigned s = 0; s < 20; ++s) {
    randomize(sol, 300 + s);
    const auto& x = sol.coefficients();
    const double n2 = std::pow(dg_norm(sol, P), 2);
    EXPECT_GE(bilinear_form(ctx, x, x), n2 * (1 - 1e-10));
  }
}

TEST(Eoc, Rates) {
  const auto r = eoc({1.0, 0.25, 0.0625}, {1.0, 0.5, 0.25});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 2.0, 1e-14);
  EXPECT_NEAR(r[1], 2.0, 1e-14);
  EXPECT_NEAR(eoc({1.0, 1.0 / 8}, {0.3, 0.15})[0], 3.0, 1e-14);
  EXPECT_THROW(eoc({1.0, 0.0}, {1.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(eoc({1.0, 0.5}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(eoc({1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(eoc({1.0, 0.5}, {1.0}), std::invalid_argument);
}

TEST(MeshQuality, CartesianDefaults) {
  auto c = CoefficientField::constant(1, 1.0, 0.25);  // c = 2
  auto m = build_cartesian_1d(0.0, 1.0, 4, 0.5, 4, c);  // L_x = c L_t
  const auto q = mesh_quality(m, c, default_parameters(m, c));
  for (const auto& Q : q) {
    EXPECT_NEAR(Q.xi_time, 3.0, 1e-12);
    EXPECT_NEAR(Q.xi_space, 3.0, 1e-12);
    EXPECT_NEAR(Q.xi, 3.0, 1e-12);
    // half diagonal sqrt(2) h / 2 times perimeter 4h over area h^2
    EXPECT_NEAR(Q.eta, 2.0 * std::sqrt(2.0), 1e-12);
    EXPECT_LE(Q.eta, 8.0);
  }
}

TEST(MeshQuality, TiltedFacesRaiseXiSpace) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = pitch_tents_1d(grid(0.0, 1.0, 4), 1.0, c, 0.5);
  for (const auto& Q : mesh_quality(m, c, default_parameters(m, c))) {
    EXPECT_GE(Q.xi_space, 0.0);
    EXPECT_TRUE(std::isfinite(Q.xi));
  }
}

TEST(Energy, ExactStandingWave) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 4, 1.0, 4, c);
  for (double t : {0.0, 0.3, 0.77, 1.0})
    EXPECT_NEAR(exact_energy_at_time(m, c, standing_wave(), t, 10), M_PI * M_PI / 4, 1e-10);
}

TEST(Energy, FrontsMonotoneOnSlabs) {
  auto p = benchmark("gaussian-pulse-1d");
  auto m = build_cartesian_1d(p.lo[0], p.hi[0], 16, p.T, 16, p.coeff, p.bc);
  const auto P = default_parameters(m, p.coeff);
  const auto data = p.data(&P);
  auto r = solve(m, SpaceKind::QW, 2, p.coeff, P, data);
  ASSERT_TRUE(r.report.ok);
  const auto E = front_energies(r.solution, &data);
  ASSERT_EQ(E.size(), m.layers.size() + 1);
  for (std::size_t j = 1; j < E.size(); ++j) EXPECT_LE(E[j], E[j - 1] + 1e-10 * E[0]);
  EXPECT_LT(E.back(), E.front());
  // slices at layer tops agree with the fronts on slab meshes
  EXPECT_NEAR(energy_at_time(r.solution, p.T), E.back(), 1e-12 * E[0]);
}

TEST(Energy, FrontsMonotoneOnTents) {
  auto p = benchmark("gaussian-pulse-1d");
  auto m = pitch_tents_1d(grid(p.lo[0], p.hi[0], 32), p.T, p.coeff, 0.9, p.bc);
  const auto P = default_parameters(m, p.coeff);
  const auto data = p.data(&P);
  auto r = solve(m, SpaceKind::QW, 2, p.coeff, P, data);
  ASSERT_TRUE(r.report.ok);
  const auto E = front_energies(r.solution, &data);
  for (std::size_t j = 1; j < E.size(); ++j) EXPECT_LE(E[j], E[j - 1] + 1e-10 * E[0]);
}

TEST(FinalTime, DifferenceOfSolutions) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m1 = build_cartesian_1d(0.0, 1.0, 3, 1.0, 2, c);
  auto m2 = build_cartesian_1d(0.0, 1.0, 4, 1.0, 5, c);
  auto a = empty_solution(m1, c, SpaceKind::QW, 2);
  auto b = empty_solution(m2, c, SpaceKind::QW, 3);
  const auto ex = quadratic_wave(1);
  fit_exact(a, ex);
  fit_exact(b, ex);
  EXPECT_LT(final_time_difference(a, b), 1e-11);
  auto z = empty_solution(m2, c, SpaceKind::QW, 1);
  // ||(v, sigma)(T)|| = sqrt(2 E(T))
  EXPECT_NEAR(final_time_difference(a, z), std::sqrt(2 * energy_at_time(a, 1.0)), 1e-11);
  EXPECT_NEAR(final_time_error(a, kZero), std::sqrt(2 * energy_at_time(a, 1.0)), 1e-11);
  // v = 2t, sigma = -2x at T = 1: int 4 + 4x^2 = 16/3
  EXPECT_NEAR(final_time_error(a, kZero), std::sqrt(16.0 / 3.0), 1e-11);
}

TEST(FinalTime, Prism2D) {
  auto c = CoefficientField::constant(2, 1.0, 1.0);
  auto m = build_prism_2d(2, 1.0, 2, c);
  auto a = empty_solution(m, c, SpaceKind::QW, 2);
  fit_exact(a, quadratic_wave(2));
  // v = 4, sigma = -2x at T = 1: int 16 + 4|x|^2 = 16 + 8/3
  EXPECT_NEAR(final_time_error(a, kZero), std::sqrt(16.0 + 8.0 / 3.0), 1e-10);
  EXPECT_LT(final_time_error(a, quadratic_wave(2)), 1e-10);
}

TEST(Snapshot, CsvAndVtk) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 2, c);
  auto a = empty_solution(m, c, SpaceKind::QW, 2);
  fit_exact(a, quadratic_wave(1));
  std::ostringstream csv, vtk;
  export_snapshot(csv, a, 0.5, 3, 1, "csv");
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x1,x2,t,v,sigma1,sigma2");
  std::getline(in, line);
  double x1, x2, t, v, s1, s2;
  char sep;
  std::istringstream row(line);
  row >> x1 >> sep >> x2 >> sep >> t >> sep >> v >> sep >> s1 >> sep >> s2;
  EXPECT_EQ(x1, 0.0);
  EXPECT_EQ(t, 0.5);
  EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_NEAR(s1, 0.0, 1e-12);
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
  export_snapshot(vtk, a, 0.5, 3, 1, "vtk");
  EXPECT_NE(vtk.str().find("DATASET STRUCTURED_POINTS"), std::string::npos);
  EXPECT_NE(vtk.str().find("POINT_DATA 3"), std::string::npos);
  EXPECT_THROW(export_snapshot(vtk, a, 0.5, 3, 1, "png"), std::invalid_argument);
}

namespace {

/// Ai from Ai(0), Ai'(0) by RK4 on the ODE, long double, fixed step.
long double airy_rk4(long double x) {
  long double y = 0.355028053887817239260L, dy = -0.258819403792806798405L, s = 0.0L;
  const int n = 20000;
  const long double h = x / n;
  for (int i = 0; i < n; ++i) {
    const long double k1 = dy, l1 = s * y;
    const long double k2 = dy + h / 2 * l1, l2 = (s + h / 2) * (y + h / 2 * k1);
    const long double k3 = dy + h / 2 * l2, l3 = (s + h / 2) * (y + h / 2 * k2);
    const long double k4 = dy + h * l3, l4 = (s + h) * (y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    dy += h / 6 * (l1 + 2 * l2 + 2 * l3 + l4);
    s += h;
  }
  return y;
}

}  // namespace

TEST(Airy, ValuesAtZero) {
  EXPECT_NEAR(airy_ai(0.0), 0.3550280538878172, 1e-15);
  EXPECT_NEAR(airy_ai_prime(0.0), -0.2588194037928068, 1e-15);
}

TEST(Airy, MatchesOdeIntegration) {
  for (double x : {-11.0, -6.5, -3.0, -1.0, 0.5, 1.0, 2.0})
    EXPECT_NEAR(airy_ai(x), static_cast<double>(airy_rk4(x)), 1e-10) << x;
}

TEST(Airy, OdeResidual) {
  // fourth-order differences
  const double h = 5e-3;
  auto f = [](double x) { return airy_ai(x); };
  auto g = [](double x) { return airy_ai_prime(x); };
  for (double x = -11.0; x <= 1.0; x += 0.25) {
    const double d2 =
        (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
    EXPECT_LT(std::abs(d2 - x * f(x)), 1e-8) << x;
    const double d2p = (-g(x + 2 * h) + 8 * g(x + h) - 8 * g(x - h) + g(x - 2 * h)) / (12 * h);
    EXPECT_LT(std::abs(d2p - x * f(x)), 1e-8) << x;
  }
  EXPECT_THROW(airy_ai(-12.5), std::out_of_range);
  EXPECT_THROW(airy_ai(2.5), std::out_of_range);
}

TEST(Airy, JetDerivatives) {
  const double z0 = -2.3;
  const auto J = airy_ai(Jet::variable(z0, 6));
  EXPECT_NEAR(J.value(), airy_ai(z0), 1e-14);
  EXPECT_NEAR(J.derivative(1), airy_ai_prime(z0), 1e-14);
  EXPECT_NEAR(J.derivative(2), z0 * airy_ai(z0), 1e-13);
  EXPECT_NEAR(J.derivative(3), airy_ai(z0) + z0 * airy_ai_prime(z0), 1e-13);
  // composition with z = -x - 1 flips odd derivatives
  const auto K = airy_ai(Jet::variable(1.3, 4) * -1.0 - 1.0);
  EXPECT_NEAR(K.derivative(1), -airy_ai_prime(z0), 1e-13);
  EXPECT_NEAR(K.derivative(2), z0 * airy_ai(z0), 1e-13);
}

TEST(Benchmarks, SelfCheck) {
  for (const char* name : {"a", "b", "c", "d"}) {
    const auto p = benchmark(name);
    EXPECT_TRUE(p.has_exact);
    EXPECT_LT(p.self_check(100), 1e-9) << name;
  }
  EXPECT_THROW(benchmark("nope"), std::invalid_argument);
  EXPECT_EQ(benchmark_names().size(), 7u);
}

TEST(Benchmarks, PulseData) {
  const auto p = benchmark("gaussian-pulse");
  EXPECT_FALSE(p.has_exact);
  const double d = 1.0 / 32;
  const STPoint q{{0.02, 0.4}, 0.0};
  EXPECT_NEAR(p.sigma0(q)[0], -2 * 0.02 / (d * d) * std::exp(-0.02 * 0.02 / (d * d)), 1e-12);
  EXPECT_EQ(p.sigma0(q)[1], 0.0);
  EXPECT_EQ(p.v0(q), 0.0);
  for (auto k : p.bc.side) EXPECT_EQ(k, BoundaryKind::Neumann);
  const auto h = benchmark("hat");
  EXPECT_NEAR(h.v0(STPoint{{0.1, 0.0}, 0.0}), 0.15, 1e-15);
  EXPECT_EQ(h.v0(STPoint{{0.3, 0.0}, 0.0}), 0.0);
  EXPECT_NEAR(h.coeff.G(SpacePoint{0.25, 0.0}), 1.0 / (1.25 * 1.25), 1e-15);
}

TEST(Benchmarks, BoxNormal) {
  const SpacePoint lo{0.0, 0.0}, hi{1.0, 1.0};
  EXPECT_EQ(box_normal(2, lo, hi, {1.0, 0.4}), (SpacePoint{1.0, 0.0}));
  EXPECT_EQ(box_normal(2, lo, hi, {0.3, 0.0}), (SpacePoint{0.0, -1.0}));
  EXPECT_EQ(box_normal(1, {2.0, 0.0}, {3.0, 0.0}, {2.0, 0.0}), (SpacePoint{-1.0, 0.0}));
}
