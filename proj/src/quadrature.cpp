#include "qtdg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qtdg {

namespace {

std::pair<std::vector<double>, std::vector<double>> compute_gl(int npts) {
  std::vector<double> x(npts), w(npts);
  for (int i = 0; i < npts; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= npts; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = npts * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace

void gauss_legendre(int npts, std::vector<double>& nodes, std::vector<double>& weights) {
  if (npts < 1) throw std::invalid_argument("need at least one quadrature point");
  static std::mutex m;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(npts);
  if (it == cache.end()) it = cache.emplace(npts, compute_gl(npts)).first;
  nodes = it->second.first;
  weights = it->second.second;
}

void triangle_rule_st(const STPoint& a, const STPoint& b, const STPoint& c, int npts,
                      std::vector<QuadPoint>& out) {
  std::vector<double> x, w;
  gauss_legendre(npts, x, w);
  const double area =
      0.5 * std::abs((b.x[0] - a.x[0]) * (c.t - a.t) - (c.x[0] - a.x[0]) * (b.t - a.t));
  if (area == 0.0) return;
  for (int i = 0; i < npts; ++i)
    for (int j = 0; j < npts; ++j) {
      const double u = x[i], v = x[j];
      // P = a + u (b - a) + u v (c - b)
      STPoint p;
      p.x[0] = a.x[0] + u * (b.x[0] - a.x[0]) + u * v * (c.x[0] - b.x[0]);
      p.t = a.t + u * (b.t - a.t) + u * v * (c.t - b.t);
      out.push_back({p, w[i] * w[j] * u * 2.0 * area});
    }
}

void triangle_rule_space(const STPoint& a, const STPoint& b, const STPoint& c, int npts,
                         std::vector<QuadPoint>& out) {
  std::vector<double> x, w;
  gauss_legendre(npts, x, w);
  const double area = 0.5 * std::abs((b.x[0] - a.x[0]) * (c.x[1] - a.x[1]) -
                                     (c.x[0] - a.x[0]) * (b.x[1] - a.x[1]));
  for (int i = 0; i < npts; ++i)
    for (int j = 0; j < npts; ++j) {
      const double u = x[i], v = x[j];
      STPoint p;
      for (int k = 0; k < 2; ++k)
        p.x[k] = a.x[k] + u * (b.x[k] - a.x[k]) + u * v * (c.x[k] - b.x[k]);
      p.t = a.t;
      out.push_back({p, w[i] * w[j] * u * 2.0 * area});
    }
}

void segment_rule(const STPoint& a, const STPoint& b, int npts, std::vector<QuadPoint>& out) {
  std::vector<double> x, w;
  gauss_legendre(npts, x, w);
  const double dx0 = b.x[0] - a.x[0], dx1 = b.x[1] - a.x[1], dt = b.t - a.t;
  const double len = std::sqrt(dx0 * dx0 + dx1 * dx1 + dt * dt);
  for (int i = 0; i < npts; ++i) {
    STPoint p;
    p.x[0] = a.x[0] + x[i] * dx0;
    p.x[1] = a.x[1] + x[i] * dx1;
    p.t = a.t + x[i] * dt;
    out.push_back({p, w[i] * len});
  }
}

}  // namespace qtdg
