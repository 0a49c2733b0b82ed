#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qtdg/jet.hpp"
#include "qtdg/polynomial.hpp"

namespace qtdg {

using SpacePoint = std::array<double, 2>;

/// Time-independent scalar field with spatial partial derivatives.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual double value(const SpacePoint& x) const = 0;
  /// D^{i_x} f(x); the time part of i must be zero.
  virtual double derivative(const MultiIndex& i, const SpacePoint& x) const = 0;
};

/// f(x) = phi(a.x + b), phi given as an operation on Taylor jets.
class RidgeField : public ScalarField {
 public:
  using Profile = std::function<Jet(const Jet&)>;
  RidgeField(SpacePoint a, double b, Profile phi) : a_(a), b_(b), phi_(std::move(phi)) {}
  double value(const SpacePoint& x) const override;
  double derivative(const MultiIndex& i, const SpacePoint& x) const override;

 private:
  SpacePoint a_;
  double b_;
  Profile phi_;
};

/// Field defined by a user callback returning D^{i_x} f(x).
class CallbackField : public ScalarField {
 public:
  using Derivative = std::function<double(const MultiIndex&, const SpacePoint&)>;
  explicit CallbackField(Derivative d) : d_(std::move(d)) {}
  double value(const SpacePoint& x) const override;
  double derivative(const MultiIndex& i, const SpacePoint& x) const override;

 private:
  Derivative d_;
};

enum class CoefficientFamily { Constant, Affine, Polynomial, InverseSquare, Custom };

std::string to_string(CoefficientFamily f);

/// Material coefficients rho, G and the wavespeed c = (rho G)^{-1/2}.
class CoefficientField {
 public:
  CoefficientField(int n, std::shared_ptr<const ScalarField> inv_rho,
                   std::shared_ptr<const ScalarField> G, CoefficientFamily family,
                   bool monotone_wavespeed = false);

  static CoefficientField constant(int n, double rho, double G);
  /// rho constant, G(x) = g0 + grad.x
  static CoefficientField affine(int n, double rho, double g0, SpacePoint grad);
  /// rho constant, G(x) = (a.x + b)^{-2}
  static CoefficientField inverse_square(int n, double rho, SpacePoint a, double b);
  /// n = 1, rho(x) = x^{-2}, G(x) = x^2 - 2
  static CoefficientField bessel();
  static CoefficientField custom(int n, CallbackField::Derivative inv_rho,
                                 CallbackField::Derivative G);

  int n() const { return n_; }
  CoefficientFamily family() const { return family_; }
  bool monotone_wavespeed() const { return monotone_; }

  double inv_rho(const SpacePoint& x) const;
  double rho(const SpacePoint& x) const { return 1.0 / inv_rho(x); }
  double G(const SpacePoint& x) const;
  /// Gradient of 1/rho.
  SpacePoint grad_inv_rho(const SpacePoint& x) const;
  bool constant_rho() const { return family_ != CoefficientFamily::Polynomial &&
                                    family_ != CoefficientFamily::Custom; }

  const ScalarField& inv_rho_field() const { return *inv_rho_; }
  const ScalarField& G_field() const { return *G_; }

 private:
  int n_;
  std::shared_ptr<const ScalarField> inv_rho_;
  std::shared_ptr<const ScalarField> G_;
  CoefficientFamily family_;
  bool monotone_;
};

/// Taylor coefficients at x_K of 1/rho (zeta), G (g) and rho (r), for |i_x| <= order.
struct TaylorData {
  int n = 1;
  SpacePoint center{0.0, 0.0};
  int order = 0;
  /// True when every coefficient beyond `order` is exactly zero.
  bool complete = false;
  std::vector<double> zeta_, g_, r_;

  double zeta(int i1, int i2 = 0) const { return get(zeta_, i1, i2); }
  double g(int i1, int i2 = 0) const { return get(g_, i1, i2); }
  double r(int i1, int i2 = 0) const { return get(r_, i1, i2); }
  double zeta(const MultiIndex& i) const { return zeta(i.ix[0], i.ix[1]); }
  double g(const MultiIndex& i) const { return g(i.ix[0], i.ix[1]); }
  double r(const MultiIndex& i) const { return r(i.ix[0], i.ix[1]); }

  void set_zeta(int i1, int i2, double v) { at(zeta_, i1, i2) = v; }
  void set_g(int i1, int i2, double v) { at(g_, i1, i2) = v; }
  /// Recomputes r from zeta by series reciprocal.
  void update_rho_series();

  /// Data with coefficients of order > m set to zero and complete = true.
  TaylorData truncated(int m) const;
  /// Coefficients multiplied by s^{|i_x|} (data for scaled variables).
  TaylorData scaled(double s) const;
  /// Allocates zero coefficients.
  static TaylorData zeros(int n, SpacePoint center, int order);

 private:
  double get(const std::vector<double>& v, int i1, int i2) const {
    if (i1 < 0 || i2 < 0 || i1 + i2 > order || (n == 1 && i2 != 0)) return 0.0;
    return v[i1 * (order + 1) + i2];
  }
  double& at(std::vector<double>& v, int i1, int i2) { return v[i1 * (order + 1) + i2]; }
};

TaylorData taylor_data(const CoefficientField& field, const SpacePoint& x_K, int order);

double wavespeed(const CoefficientField& field, const SpacePoint& x);

/// Upper bound of c over the convex hull of the given spatial points.
double wavespeed_sup(const CoefficientField& field, const std::vector<SpacePoint>& region);

}  // namespace qtdg
