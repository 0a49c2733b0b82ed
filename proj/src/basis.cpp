#include "qtdg/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace qtdg {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::QW: return "QW";
    case SpaceKind::QT: return "QT";
    case SpaceKind::Y: return "Y";
    case SpaceKind::W: return "W";
  }
  return "?";
}

SpaceKind parse_space_kind(const std::string& s) {
  if (s == "QW") return SpaceKind::QW;
  if (s == "QT") return SpaceKind::QT;
  if (s == "Y") return SpaceKind::Y;
  if (s == "W") return SpaceKind::W;
  throw std::invalid_argument("unknown space kind: " + s);
}

int qu_dimension(int n, int p) {
  return static_cast<int>(binomial(p + n, n) + (p >= 1 ? binomial(p - 1 + n, n) : 0.0));
}
int qw_dimension(int n, int p) { return qu_dimension(n, p + 1) - 1; }
int qt_dimension(int n, int p) { return (n + 1) * static_cast<int>(binomial(p + n, n)); }
int y_dimension(int n, int p) { return static_cast<int>(binomial(p + 2 + n, n + 1)) - 1; }

int space_dimension(SpaceKind kind, int n, int p) {
  switch (kind) {
    case SpaceKind::QW:
    case SpaceKind::W: return qw_dimension(n, p);
    case SpaceKind::QT: return qt_dimension(n, p);
    case SpaceKind::Y: return y_dimension(n, p);
  }
  return 0;
}

namespace {

using Coeffs = std::map<MultiIndex, double>;

double get(const Coeffs& a, const MultiIndex& k) {
  auto it = a.find(k);
  return it == a.end() ? 0.0 : it->second;
}

MultiIndex st(int n, const MultiIndex& ix, int it) { return MultiIndex(n, ix.ix, it); }

void require_order(const TaylorData& t, int needed, const char* what) {
  if (!t.complete && t.order < needed)
    throw std::invalid_argument(std::string("insufficient Taylor order for ") + what);
}

SpaceTimePolynomial to_poly(const Coeffs& a, int n, const STPoint& c, double s) {
  SpaceTimePolynomial f(n, c, s);
  for (const auto& [k, v] : a) f.set(k, v);
  return f;
}

}  // namespace

ScalarBasis build_qu_basis(int p, const TaylorData& taylor, const STPoint& center, double scale) {
  if (p < 0) throw std::invalid_argument("p must be nonnegative");
  const int n = taylor.n;
  require_order(taylor, std::max(p - 1, 0), "QU basis");
  const TaylorData td = taylor.scaled(scale);
  const double g0 = td.g(0, 0);
  if (!(g0 > 0)) throw std::domain_error("g_0 must be positive");

  ScalarBasis B;
  B.p = p;
  B.n = n;
  B.center = center;
  B.scale = scale;

  std::vector<Coeffs> seeds;
  for (const auto& k : spatial_indices_up_to(n, p)) seeds.push_back({{st(n, k, 0), 1.0}});
  if (p >= 1)
    for (const auto& k : spatial_indices_up_to(n, p - 1)) seeds.push_back({{st(n, k, 1), 1.0}});

  for (auto& a : seeds) {
    for (int l = 2; l <= p; ++l)
      for (int it = 0; it <= l - 2; ++it)
        for (const auto& i : spatial_indices_of_order(n, l - it - 2)) {
          double v = 0.0;
          for (const auto& j : spatial_indices_up_to(n, i.space_order())) {
            if (j == i || !j.leq(i)) continue;
            v -= td.g(i - j) / g0 * get(a, st(n, j, it + 2));
          }
          for (int lam = 0; lam < n; ++lam) {
            const MultiIndex e = MultiIndex::unit(n, lam);
            const MultiIndex ie = i + e;
            for (const auto& j : spatial_indices_up_to(n, ie.space_order())) {
              if (!j.leq(ie)) continue;
              const double coef = get(a, st(n, j + e, it));
              if (coef == 0.0) continue;
              v += (i.ix[lam] + 1.0) * (j.ix[lam] + 1.0) * td.zeta(ie - j) /
                   ((it + 2.0) * (it + 1.0) * g0) * coef;
            }
          }
          if (v != 0.0) a[st(n, i, it + 2)] = v;
        }
    B.b.push_back(to_poly(a, n, center, scale));
  }
  return B;
}

std::map<MultiIndex, double> quasi_trefftz_residuals(const SpaceTimePolynomial& f,
                                                     const TaylorData& taylor, int up_to) {
  const int n = f.n();
  if (taylor.n != n) throw std::invalid_argument("dimension mismatch");
  require_order(taylor, up_to + 1, "residuals");
  std::map<MultiIndex, double> out;
  auto D = [&](const MultiIndex& k) { return derivative_at_center(f, k); };
  for (const auto& i : indices_up_to(n, up_to)) {
    const MultiIndex ix = MultiIndex::space(n, i.ix[0], i.ix[1]);
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      const MultiIndex e = MultiIndex::unit(n, k);
      const MultiIndex ie = ix + e;
      for (const auto& j : spatial_indices_up_to(n, ie.space_order())) {
        if (!j.leq(ie)) continue;
        s += ie.factorial() / j.factorial() * taylor.zeta(ie - j) * D(st(n, j + e, i.it));
      }
    }
    for (const auto& j : spatial_indices_up_to(n, ix.space_order())) {
      if (!j.leq(ix)) continue;
      s -= ix.factorial() / j.factorial() * taylor.g(ix - j) * D(st(n, j, i.it + 2));
    }
    out[i] = s;
  }
  return out;
}

std::vector<VectorBasisElement> build_qt_basis(int p, const TaylorData& taylor,
                                               const STPoint& center, double scale) {
  if (p < 0) throw std::invalid_argument("p must be nonnegative");
  const int n = taylor.n;
  require_order(taylor, std::max(p - 1, 0), "QT basis");
  const TaylorData td = taylor.scaled(scale);
  const double g0 = td.g(0, 0), r0 = td.r(0, 0);
  if (!(g0 > 0) || !(r0 > 0)) throw std::domain_error("g_0 and rho(x_K) must be positive");

  std::vector<VectorBasisElement> out;
  for (const auto& k : spatial_indices_up_to(n, p))
    for (int slot = 0; slot <= n; ++slot) {
      std::array<Coeffs, 3> a;
      a[slot][st(n, k, 0)] = 1.0;
      for (int l = 1; l <= p; ++l)
        for (int it = 0; it <= l - 1; ++it)
          for (const auto& i : spatial_indices_of_order(n, l - it - 1)) {
            double v0 = 0.0;
            for (int lam = 0; lam < n; ++lam) {
              const MultiIndex e = MultiIndex::unit(n, lam);
              v0 -= (i.ix[lam] + 1.0) / (g0 * (it + 1.0)) * get(a[lam + 1], st(n, i + e, it));
            }
            for (const auto& j : spatial_indices_up_to(n, i.space_order())) {
              if (j == i || !j.leq(i)) continue;
              v0 -= td.g(i - j) / g0 * get(a[0], st(n, j, it + 1));
            }
            if (v0 != 0.0) a[0][st(n, i, it + 1)] = v0;
            for (int lam = 0; lam < n; ++lam) {
              const MultiIndex e = MultiIndex::unit(n, lam);
              double v = -(i.ix[lam] + 1.0) / ((it + 1.0) * r0) * get(a[0], st(n, i + e, it));
              for (const auto& j : spatial_indices_up_to(n, i.space_order())) {
                if (j == i || !j.leq(i)) continue;
                v -= td.r(i - j) / r0 * get(a[lam + 1], st(n, j, it + 1));
              }
              if (v != 0.0) a[lam + 1][st(n, i, it + 1)] = v;
            }
          }
      VectorBasisElement e;
      e.kind = SpaceKind::QT;
      e.w = to_poly(a[0], n, center, scale);
      for (int lam = 0; lam < n; ++lam) e.tau.push_back(to_poly(a[lam + 1], n, center, scale));
      e.u = SpaceTimePolynomial(n, center, scale);
      e.weight = WeightKind::None;
      out.push_back(std::move(e));
    }
  return out;
}

std::map<MultiIndex, std::array<double, 3>> qt_residuals(const VectorBasisElement& e,
                                                         const TaylorData& taylor, int up_to) {
  const int n = e.w.n();
  require_order(taylor, up_to, "QT residuals");
  std::map<MultiIndex, std::array<double, 3>> out;
  auto D = [](const SpaceTimePolynomial& f, const MultiIndex& k) {
    return derivative_at_center(f, k);
  };
  const MultiIndex et = MultiIndex::unit(n, n);
  for (const auto& i : indices_up_to(n, up_to)) {
    const MultiIndex ix = MultiIndex::space(n, i.ix[0], i.ix[1]);
    std::array<double, 3> r{0.0, 0.0, 0.0};
    // D^i (div tau + G d_t w) = sum_l D^{i+e_l} tau_l + sum_j binom(i_x,j) D^{i_x-j}G D^{(j,i_t+1)} w
    for (int l = 0; l < n; ++l) r[0] += D(e.tau[l], i + MultiIndex::unit(n, l));
    for (const auto& j : spatial_indices_up_to(n, ix.space_order())) {
      if (!j.leq(ix)) continue;
      const double c = ix.factorial() / j.factorial();
      r[0] += c * taylor.g(ix - j) * D(e.w, st(n, j, i.it) + et);
      for (int l = 0; l < n; ++l) r[l + 1] += c * taylor.r(ix - j) * D(e.tau[l], st(n, j, i.it) + et);
    }
    for (int l = 0; l < n; ++l) r[l + 1] += D(e.w, i + MultiIndex::unit(n, l));
    out[i] = r;
  }
  return out;
}

std::vector<VectorBasisElement> build_vector_space(SpaceKind kind, int p, const STPoint& center,
                                                   double scale, const CoefficientField& coeff) {
  const int n = coeff.n();
  std::vector<VectorBasisElement> out;
  auto from_potential = [&](const SpaceTimePolynomial& u, WeightKind wk, double factor) {
    VectorBasisElement e;
    e.kind = kind;
    e.u = u;
    e.w = derive(u, MultiIndex::unit(n, n));
    for (int k = 0; k < n; ++k) e.tau.push_back(derive(u, MultiIndex::unit(n, k)) * (-factor));
    e.weight = wk;
    return e;
  };
  switch (kind) {
    case SpaceKind::QW: {
      const TaylorData td = taylor_data(coeff, center.x, p + 1);
      const ScalarBasis B = build_qu_basis(p + 1, td, center, scale);
      for (std::size_t J = 1; J < B.b.size(); ++J)
        out.push_back(from_potential(B.b[J], WeightKind::ExactInvRho, 1.0));
      break;
    }
    case SpaceKind::W: {
      const TaylorData td = taylor_data(coeff, center.x, 0).truncated(0);
      const ScalarBasis B = build_qu_basis(p + 1, td, center, scale);
      for (std::size_t J = 1; J < B.b.size(); ++J)
        out.push_back(from_potential(B.b[J], WeightKind::None, td.zeta(0, 0)));
      break;
    }
    case SpaceKind::Y: {
      const double z0 = coeff.inv_rho(center.x);
      for (const auto& k : indices_up_to(n, p + 1)) {
        if (k.order() == 0) continue;
        out.push_back(
            from_potential(SpaceTimePolynomial::monomial(k, 1.0, center, scale), WeightKind::None, z0));
      }
      break;
    }
    case SpaceKind::QT: {
      const TaylorData td = taylor_data(coeff, center.x, std::max(p, 1));
      out = build_qt_basis(p, td, center, scale);
      break;
    }
  }
  return out;
}

std::vector<VectorBasisElement> build_vector_space(SpaceKind kind, int p, const Element& K,
                                                   const CoefficientField& coeff) {
  return build_vector_space(kind, p, K.center, K.r_K, coeff);
}

SpaceTimePolynomial taylor_project_solution(const std::function<double(const MultiIndex&)>& d,
                                            int n, const STPoint& center, int p, double scale) {
  std::map<MultiIndex, double> derivs;
  for (const auto& i : indices_up_to(n, p)) derivs[i] = d(i);
  return taylor_polynomial(derivs, p, n, center, scale);
}

LocalBasis LocalBasis::from_elements(const std::vector<VectorBasisElement>& elems, int n, int p,
                                     SpaceKind kind) {
  LocalBasis B;
  B.kind = kind;
  B.n = n;
  B.p = p;
  B.dim = static_cast<int>(elems.size());
  if (elems.empty()) throw std::invalid_argument("empty local basis");
  B.scale = elems.front().w.scale();
  B.weight = elems.front().weight;
  int deg = 0;
  for (const auto& e : elems) {
    deg = std::max(deg, e.w.degree());
    for (const auto& t : e.tau) deg = std::max(deg, t.degree());
  }
  B.degree = deg;
  B.monomials = indices_up_to(n, deg);
  std::map<MultiIndex, int> pos;
  for (std::size_t m = 0; m < B.monomials.size(); ++m) pos[B.monomials[m]] = static_cast<int>(m);
  const int nm = static_cast<int>(B.monomials.size());
  B.W = Eigen::MatrixXd::Zero(B.dim, nm);
  for (int k = 0; k < 2; ++k) B.Tau[k] = Eigen::MatrixXd::Zero(B.dim, nm);
  for (int j = 0; j < B.dim; ++j) {
    for (const auto& [k, a] : elems[j].w.coeffs()) B.W(j, pos.at(k)) = a;
    for (int l = 0; l < n; ++l)
      for (const auto& [k, a] : elems[j].tau[l].coeffs()) B.Tau[l](j, pos.at(k)) = a;
  }
  return B;
}

BasisValues evaluate_basis(const LocalBasis& B, const STPoint& center,
                           const std::vector<QuadPoint>& pts, const CoefficientField& coeff,
                           bool derivatives) {
  const int nq = static_cast<int>(pts.size());
  const int nm = static_cast<int>(B.monomials.size());
  const int n = B.n;
  const double inv_s = 1.0 / B.scale;
  const int d = B.degree;
  Eigen::MatrixXd M(nq, nm), Mt, Mx[2];
  if (derivatives) {
    Mt.resize(nq, nm);
    for (int k = 0; k < n; ++k) Mx[k].resize(nq, nm);
  }
  std::vector<double> pw[3];
  for (auto& v : pw) v.assign(d + 2, 1.0);
  for (int q = 0; q < nq; ++q) {
    const double xi[3] = {(pts[q].p.x[0] - center.x[0]) * inv_s,
                          (pts[q].p.x[1] - center.x[1]) * inv_s, (pts[q].p.t - center.t) * inv_s};
    for (int v = 0; v < 3; ++v)
      for (int k = 1; k <= d; ++k) pw[v][k] = pw[v][k - 1] * xi[v];
    for (int m = 0; m < nm; ++m) {
      const MultiIndex& k = B.monomials[m];
      const double a = pw[0][k.ix[0]], b = pw[1][k.ix[1]], c = pw[2][k.it];
      M(q, m) = a * b * c;
      if (derivatives) {
        Mt(q, m) = k.it ? k.it * a * b * pw[2][k.it - 1] * inv_s : 0.0;
        Mx[0](q, m) = k.ix[0] ? k.ix[0] * pw[0][k.ix[0] - 1] * b * c * inv_s : 0.0;
        if (n == 2) Mx[1](q, m) = k.ix[1] ? k.ix[1] * a * pw[1][k.ix[1] - 1] * c * inv_s : 0.0;
      }
    }
  }
  BasisValues V;
  V.w = M * B.W.transpose();
  std::array<Eigen::MatrixXd, 2> tp;
  for (int k = 0; k < n; ++k) tp[k] = M * B.Tau[k].transpose();
  if (B.weight == WeightKind::None) {
    for (int k = 0; k < n; ++k) V.tau[k] = tp[k];
  }
  Eigen::VectorXd om, dom[2];
  if (B.weight == WeightKind::ExactInvRho) {
    om.resize(nq);
    for (int k = 0; k < n; ++k) dom[k].resize(nq);
    for (int q = 0; q < nq; ++q) {
      om(q) = coeff.inv_rho(pts[q].p.x);
      if (derivatives) {
        const SpacePoint g = coeff.grad_inv_rho(pts[q].p.x);
        for (int k = 0; k < n; ++k) dom[k](q) = g[k];
      }
    }
    for (int k = 0; k < n; ++k) V.tau[k] = om.asDiagonal() * tp[k];
  }
  if (!derivatives) return V;
  V.dtw = Mt * B.W.transpose();
  V.divtau = Eigen::MatrixXd::Zero(nq, B.dim);
  for (int k = 0; k < n; ++k) {
    V.dxw[k] = Mx[k] * B.W.transpose();
    Eigen::MatrixXd dt_tp = Mt * B.Tau[k].transpose();
    Eigen::MatrixXd dx_tp = Mx[k] * B.Tau[k].transpose();
    if (B.weight == WeightKind::ExactInvRho) {
      V.dttau[k] = om.asDiagonal() * dt_tp;
      V.divtau += om.asDiagonal() * dx_tp + dom[k].asDiagonal() * tp[k];
    } else {
      V.dttau[k] = dt_tp;
      V.divtau += dx_tp;
    }
  }
  return V;
}

DiscreteSpace build_discrete_space(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                                   SpaceKind kind, int p) {
  DiscreteSpace S;
  S.kind = kind;
  S.p = p;
  S.n = mesh.n;
  std::map<std::tuple<double, double, double>, std::shared_ptr<const LocalBasis>> cache;
  for (const auto& K : mesh.elements) {
    auto key = std::make_tuple(K.center.x[0], K.center.x[1], K.r_K);
    auto it = cache.find(key);
    if (it == cache.end()) {
      STPoint c0 = K.center;
      c0.t = 0.0;
      auto elems = build_vector_space(kind, p, c0, K.r_K, coeff);
      auto lb = std::make_shared<const LocalBasis>(
          LocalBasis::from_elements(elems, mesh.n, p, kind));
      it = cache.emplace(key, lb).first;
    }
    S.local.push_back(it->second);
    S.centers.push_back(K.center);
    S.offset.push_back(S.ndof);
    S.ndof += it->second->dim;
  }
  return S;
}

}  // namespace qtdg
