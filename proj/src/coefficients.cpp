#include "qtdg/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qtdg {

double RidgeField::value(const SpacePoint& x) const {
  return phi_(Jet::constant(a_[0] * x[0] + a_[1] * x[1] + b_, 0)).value();
}

double RidgeField::derivative(const MultiIndex& i, const SpacePoint& x) const {
  if (i.it != 0) throw std::invalid_argument("coefficient fields are time-independent");
  const int m = i.space_order();
  const Jet j = phi_(Jet::variable(a_[0] * x[0] + a_[1] * x[1] + b_, m));
  return j.derivative(m) * std::pow(a_[0], i.ix[0]) * std::pow(a_[1], i.ix[1]);
}

double CallbackField::value(const SpacePoint& x) const { return d_(MultiIndex::zero(2), x); }

double CallbackField::derivative(const MultiIndex& i, const SpacePoint& x) const {
  if (i.it != 0) throw std::invalid_argument("coefficient fields are time-independent");
  return d_(i, x);
}

std::string to_string(CoefficientFamily f) {
  switch (f) {
    case CoefficientFamily::Constant: return "constant";
    case CoefficientFamily::Affine: return "affine";
    case CoefficientFamily::Polynomial: return "polynomial";
    case CoefficientFamily::InverseSquare: return "inverse-square";
    case CoefficientFamily::Custom: return "custom-series";
  }
  return "unknown";
}

CoefficientField::CoefficientField(int n, std::shared_ptr<const ScalarField> inv_rho,
                                   std::shared_ptr<const ScalarField> G,
                                   CoefficientFamily family, bool monotone_wavespeed)
    : n_(n), inv_rho_(std::move(inv_rho)), G_(std::move(G)), family_(family),
      monotone_(monotone_wavespeed) {
  if (n != 1 && n != 2) throw std::invalid_argument("spatial dimension must be 1 or 2");
}

CoefficientField CoefficientField::constant(int n, double rho, double G) {
  if (!(rho > 0) || !(G > 0)) throw std::invalid_argument("rho and G must be positive");
  auto c_inv = [v = 1.0 / rho](const Jet& s) { return Jet::constant(v, s.order()); };
  auto c_g = [G](const Jet& s) { return Jet::constant(G, s.order()); };
  return CoefficientField(n, std::make_shared<RidgeField>(SpacePoint{0, 0}, 0.0, c_inv),
                          std::make_shared<RidgeField>(SpacePoint{0, 0}, 0.0, c_g),
                          CoefficientFamily::Constant, true);
}

CoefficientField CoefficientField::affine(int n, double rho, double g0, SpacePoint grad) {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  if (n == 1) grad[1] = 0.0;
  auto c_inv = [v = 1.0 / rho](const Jet& s) { return Jet::constant(v, s.order()); };
  auto lin = [](const Jet& s) { return s; };
  return CoefficientField(n, std::make_shared<RidgeField>(SpacePoint{0, 0}, 0.0, c_inv),
                          std::make_shared<RidgeField>(grad, g0, lin),
                          CoefficientFamily::Affine, true);
}

CoefficientField CoefficientField::inverse_square(int n, double rho, SpacePoint a, double b) {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  if (n == 1) a[1] = 0.0;
  auto c_inv = [v = 1.0 / rho](const Jet& s) { return Jet::constant(v, s.order()); };
  auto inv_sq = [](const Jet& s) { return 1.0 / (s * s); };
  return CoefficientField(n, std::make_shared<RidgeField>(SpacePoint{0, 0}, 0.0, c_inv),
                          std::make_shared<RidgeField>(a, b, inv_sq),
                          CoefficientFamily::InverseSquare, true);
}

CoefficientField CoefficientField::bessel() {
  auto sq = [](const Jet& s) { return s * s; };
  auto g = [](const Jet& s) { return s * s - 2.0; };
  return CoefficientField(1, std::make_shared<RidgeField>(SpacePoint{1, 0}, 0.0, sq),
                          std::make_shared<RidgeField>(SpacePoint{1, 0}, 0.0, g),
                          CoefficientFamily::Polynomial, false);
}

CoefficientField CoefficientField::custom(int n, CallbackField::Derivative inv_rho,
                                          CallbackField::Derivative G) {
  return CoefficientField(n, std::make_shared<CallbackField>(std::move(inv_rho)),
                          std::make_shared<CallbackField>(std::move(G)),
                          CoefficientFamily::Custom, false);
}

double CoefficientField::inv_rho(const SpacePoint& x) const {
  const double v = inv_rho_->value(x);
  if (!(v > 0)) throw std::domain_error("rho must be positive");
  return v;
}

double CoefficientField::G(const SpacePoint& x) const {
  const double v = G_->value(x);
  if (!(v > 0)) throw std::domain_error("G must be positive");
  return v;
}

SpacePoint CoefficientField::grad_inv_rho(const SpacePoint& x) const {
  SpacePoint g{0.0, 0.0};
  for (int k = 0; k < n_; ++k) g[k] = inv_rho_->derivative(MultiIndex::unit(n_, k), x);
  return g;
}

TaylorData TaylorData::zeros(int n, SpacePoint center, int order) {
  TaylorData d;
  d.n = n;
  d.center = center;
  d.order = order;
  const std::size_t size = static_cast<std::size_t>(order + 1) * (order + 1);
  d.zeta_.assign(size, 0.0);
  d.g_.assign(size, 0.0);
  d.r_.assign(size, 0.0);
  return d;
}

void TaylorData::update_rho_series() {
  const double z0 = zeta(0, 0);
  if (!(z0 > 0)) throw std::domain_error("zeta_0 = 1/rho(x_K) must be positive");
  for (const auto& i : spatial_indices_up_to(n, order)) {
    double s = (i.space_order() == 0) ? 1.0 : 0.0;
    for (const auto& j : spatial_indices_up_to(n, i.space_order())) {
      if (j.space_order() == 0 || !j.leq(i)) continue;
      s -= zeta(j) * r(i - j);
    }
    at(r_, i.ix[0], i.ix[1]) = s / z0;
  }
}

TaylorData TaylorData::truncated(int m) const {
  TaylorData d = zeros(n, center, m);
  d.complete = true;
  for (const auto& i : spatial_indices_up_to(n, std::min(m, order))) {
    d.set_zeta(i.ix[0], i.ix[1], zeta(i));
    d.set_g(i.ix[0], i.ix[1], g(i));
  }
  d.update_rho_series();
  return d;
}

TaylorData TaylorData::scaled(double s) const {
  TaylorData d = *this;
  for (const auto& i : spatial_indices_up_to(n, order)) {
    const double f = std::pow(s, i.space_order());
    d.at(d.zeta_, i.ix[0], i.ix[1]) *= f;
    d.at(d.g_, i.ix[0], i.ix[1]) *= f;
    d.at(d.r_, i.ix[0], i.ix[1]) *= f;
  }
  return d;
}

TaylorData taylor_data(const CoefficientField& field, const SpacePoint& x_K, int order) {
  if (order < 0) throw std::invalid_argument("taylor order must be nonnegative");
  const int n = field.n();
  TaylorData d = TaylorData::zeros(n, x_K, order);
  d.complete = field.family() == CoefficientFamily::Constant;
  if (!(field.inv_rho_field().value(x_K) > 0)) throw std::domain_error("rho must be positive");
  if (!(field.G_field().value(x_K) > 0)) throw std::domain_error("G must be positive");
  for (const auto& i : spatial_indices_up_to(n, order)) {
    const double f = i.factorial();
    d.set_zeta(i.ix[0], i.ix[1], field.inv_rho_field().derivative(i, x_K) / f);
    d.set_g(i.ix[0], i.ix[1], field.G_field().derivative(i, x_K) / f);
  }
  d.update_rho_series();
  return d;
}

double wavespeed(const CoefficientField& field, const SpacePoint& x) {
  const double prod = field.rho(x) * field.G(x);
  if (!(prod > 0)) throw std::domain_error("rho * G must be positive");
  return 1.0 / std::sqrt(prod);
}

double wavespeed_sup(const CoefficientField& field, const std::vector<SpacePoint>& region) {
  if (region.empty()) throw std::invalid_argument("empty region");
  double vmax = 0.0;
  for (const auto& x : region) vmax = std::max(vmax, wavespeed(field, x));
  if (field.monotone_wavespeed()) return vmax;
  SpacePoint lo = region.front(), hi = region.front();
  for (const auto& x : region)
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], x[k]);
      hi[k] = std::max(hi[k], x[k]);
    }
  constexpr int m = 33;
  const int m2 = field.n() == 2 ? m : 1;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m2; ++b) {
      SpacePoint x{lo[0] + (hi[0] - lo[0]) * a / (m - 1),
                   m2 > 1 ? lo[1] + (hi[1] - lo[1]) * b / (m - 1) : lo[1]};
      vmax = std::max(vmax, wavespeed(field, x));
    }
  return 1.01 * vmax;
}

}  // namespace qtdg
