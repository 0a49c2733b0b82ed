#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "qtdg/mesh.hpp"

using namespace qtdg;

namespace {

std::map<FaceKind, int> count_kinds(const SpaceTimeMesh& m) {
  std::map<FaceKind, int> c;
  for (const auto& F : m.faces) c[F.kind]++;
  return c;
}

double total_volume(const SpaceTimeMesh& m) {
  double v = 0.0;
  for (const auto& K : m.elements) v += K.volume;
  return v;
}

void check_common_invariants(const SpaceTimeMesh& m, const CoefficientField& coeff) {
  EXPECT_NEAR(total_volume(m), m.domain_volume(), 1e-10 * m.domain_volume());
  double qv = 0.0;
  for (const auto& K : m.elements)
    for (const auto& q : element_quadrature(m, K, 3)) qv += q.w;
  EXPECT_NEAR(qv, m.domain_volume(), 1e-10 * m.domain_volume());
  for (const auto& F : m.faces) {
    const double nn = F.nx[0] * F.nx[0] + F.nx[1] * F.nx[1] + F.nt * F.nt;
    EXPECT_NEAR(nn, 1.0, 1e-12);
    EXPECT_GE(F.nt, 0.0);
    EXPECT_GE(F.gamma, 0.0);
    EXPECT_LE(F.gamma, 1.0);
    if (F.kind == FaceKind::SpaceLike || F.kind == FaceKind::TimeLike) {
      EXPECT_GE(F.before, 0);
      EXPECT_GE(F.after, 0);
    }
    if (F.kind == FaceKind::Initial || F.kind == FaceKind::Final) EXPECT_EQ(F.gamma, 0.0);
    if (F.kind == FaceKind::TimeLike || F.is_boundary()) EXPECT_EQ(F.nt, 0.0);
    EXPECT_NO_THROW(classify_face(m.n, F.vertices, coeff));
    double qa = 0.0;
    for (const auto& q : face_quadrature(m, F, 3)) qa += q.w;
    EXPECT_NEAR(qa, F.measure, 1e-12 * std::max(1.0, F.measure));
  }
  // layers form a topological order
  for (const auto& F : m.faces)
    if (F.kind == FaceKind::SpaceLike)
      EXPECT_LT(m.elements[F.before].layer, m.elements[F.after].layer);
  size_t total = 0;
  for (const auto& L : m.layers) total += L.size();
  EXPECT_EQ(total, m.elements.size());
}

}  // namespace

TEST(Cartesian1D, Counts) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 2, c);
  EXPECT_EQ(m.elements.size(), 4u);
  auto k = count_kinds(m);
  EXPECT_EQ(k[FaceKind::SpaceLike], 2);
  EXPECT_EQ(k[FaceKind::TimeLike], 2);
  EXPECT_EQ(k[FaceKind::Initial], 2);
  EXPECT_EQ(k[FaceKind::Final], 2);
  EXPECT_EQ(k[FaceKind::Dirichlet], 4);
  for (const auto& F : m.faces)
    if (F.kind == FaceKind::SpaceLike) EXPECT_EQ(F.gamma, 0.0);
  check_common_invariants(m, c);
}

TEST(Cartesian1D, ProblemAMeshes) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  for (int k = 1; k <= 5; ++k) {
    const int N = 1 << k;
    auto m = build_cartesian_1d(0.0, 5.0, N, 5.0, N, c);
    EXPECT_EQ(m.elements.size(), static_cast<size_t>(N * N));
    EXPECT_DOUBLE_EQ(m.h, 5.0 / N);
    EXPECT_EQ(m.layers.size(), static_cast<size_t>(N));
    for (const auto& F : m.faces)
      if (F.kind == FaceKind::SpaceLike) {
        EXPECT_EQ(F.nx[0], 0.0);
        EXPECT_EQ(F.gamma, 0.0);
      }
    check_common_invariants(m, c);
  }
}

TEST(Cartesian1D, LayersAreSlabs) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 3, 1.0, 3, c);
  ASSERT_EQ(m.layers.size(), 3u);
  for (int j = 0; j < 3; ++j)
    for (int e : m.layers[j]) EXPECT_EQ(e / 3, j);
  auto one = build_cartesian_1d(0.0, 1.0, 1, 1.0, 1, c);
  EXPECT_EQ(one.layers.size(), 1u);
}

TEST(Cartesian1D, BoundaryKinds) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  BoundaryConditions bc;
  bc.side[0] = BoundaryKind::Neumann;
  bc.side[1] = BoundaryKind::Robin;
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 1, c, bc);
  auto k = count_kinds(m);
  EXPECT_EQ(k[FaceKind::Neumann], 1);
  EXPECT_EQ(k[FaceKind::Robin], 1);
  for (const auto& F : m.faces) {
    if (F.kind == FaceKind::Neumann) EXPECT_EQ(F.nx[0], -1.0);
    if (F.kind == FaceKind::Robin) EXPECT_EQ(F.nx[0], 1.0);
  }
}

TEST(Prism2D, Counts) {
  auto c = CoefficientField::constant(2, 1.0, 1.0);
  auto m = build_prism_2d(2, 1.0, 1, c);
  EXPECT_EQ(m.elements.size(), 8u);
  auto k = count_kinds(m);
  EXPECT_EQ(k[FaceKind::Final], 8);
  EXPECT_EQ(k[FaceKind::Initial], 8);
  EXPECT_EQ(k[FaceKind::Dirichlet], 8);
  // interior edges of a 2x2 split-square triangulation: 16 edges total, 8 on the boundary
  EXPECT_EQ(k[FaceKind::TimeLike], 8);
  check_common_invariants(m, c);
  auto big = build_prism_2d(8, 1.0, 8, c);
  EXPECT_EQ(big.elements.size(), static_cast<size_t>(2 * 8 * 8 * 8));
  for (const auto& F : big.faces)
    if (F.vertices.size() == 4) EXPECT_EQ(F.nt, 0.0);
  check_common_invariants(big, c);
}

TEST(ClassifyFace, Examples) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto h = classify_face(1, {STPoint{{0, 0}, 0.5}, STPoint{{1, 0}, 0.5}}, c);
  EXPECT_FALSE(h.time_like);
  EXPECT_EQ(h.gamma, 0.0);
  auto v = classify_face(1, {STPoint{{0, 0}, 0.0}, STPoint{{0, 0}, 1.0}}, c);
  EXPECT_TRUE(v.time_like);
  // dt/dx = 1/2 gives |nx|/nt = 1/2
  auto s = classify_face(1, {STPoint{{0, 0}, 0.0}, STPoint{{1, 0}, 0.5}}, c);
  EXPECT_FALSE(s.time_like);
  EXPECT_NEAR(s.gamma, 0.5, 1e-15);
  EXPECT_THROW(classify_face(1, {STPoint{{0, 0}, 0.0}, STPoint{{1, 0}, 2.0}}, c),
               std::domain_error);
}

TEST(Tents, ConstantSpeed) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  std::vector<double> x;
  for (int i = 0; i <= 8; ++i) x.push_back(i / 8.0);
  for (double safety : {1.0, 0.9}) {
    auto m = pitch_tents_1d(x, 1.0, c, safety);
    auto k = count_kinds(m);
    EXPECT_EQ(k[FaceKind::TimeLike], 0);
    double gmax = 0.0;
    for (const auto& F : m.faces)
      if (F.kind == FaceKind::SpaceLike) gmax = std::max(gmax, F.gamma);
    EXPECT_NEAR(gmax, safety, 1e-12);
    check_common_invariants(m, c);
    for (const auto& L : m.layers) {
      std::set<int> s(L.begin(), L.end());
      for (const auto& F : m.faces)
        if (F.kind == FaceKind::SpaceLike) EXPECT_FALSE(s.count(F.before) && s.count(F.after));
    }
  }
}

TEST(Tents, ProblemAVolumeAndHeights) {
  auto c = CoefficientField::affine(1, 1.0, 1.0, {1.0, 0.0});
  std::vector<double> x;
  for (int i = 0; i <= 20; ++i) x.push_back(5.0 * i / 20);
  auto m = pitch_tents_1d(x, 5.0, c, 0.9);
  EXPECT_NEAR(total_volume(m), 25.0, 1e-10);
  check_common_invariants(m, c);
  for (const auto& F : m.faces)
    if (F.kind == FaceKind::SpaceLike) EXPECT_LT(F.gamma, 1.0);
  // slower waves on the right allow taller tents
  double hl = 0.0, hr = 0.0;
  for (const auto& K : m.elements) {
    double tmin = 1e9, tmax = -1e9;
    for (const auto& p : K.vertices) {
      tmin = std::min(tmin, p.t);
      tmax = std::max(tmax, p.t);
    }
    if (K.center.x[0] < 1.0) hl = std::max(hl, tmax - tmin);
    if (K.center.x[0] > 4.0) hr = std::max(hr, tmax - tmin);
  }
  EXPECT_GT(hr, hl);
}

TEST(Mesh, CuboidRegularity) {
  // square cells with c = 1: eta = (h / sqrt 2)(2h + 2h) / h^2 = 2 sqrt 2
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 4, 1.0, 4, c);
  for (const auto& K : m.elements) {
    double space = 0.0, time = 0.0;
    for (int f : K.faces) {
      const auto& F = m.faces[f];
      if (F.nt > 0) space += F.measure; else time += F.measure;
    }
    const double eta = K.r_Kc * (space / K.sup_c + time) / K.volume;
    EXPECT_NEAR(eta, 2.0 * std::sqrt(2.0), 1e-12);
    EXPECT_LE(eta, 4.0);
  }
}

TEST(Mesh, DumpSections) {
  auto c = CoefficientField::constant(1, 1.0, 1.0);
  auto m = build_cartesian_1d(0.0, 1.0, 2, 1.0, 2, c);
  std::ostringstream os;
  dump_mesh(os, m);
  const std::string s = os.str();
  EXPECT_NE(s.find("VERTICES 9"), std::string::npos);
  EXPECT_NE(s.find("ELEMENTS 4"), std::string::npos);
  EXPECT_NE(s.find("FACES 12"), std::string::npos);
}
