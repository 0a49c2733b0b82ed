#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qtdg {

/// Truncated univariate Taylor series c_k = f^{(k)}(s)/k!, k = 0..order.
class Jet {
 public:
  Jet() = default;
  explicit Jet(int order, double value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

  static Jet variable(double s, int order) {
    Jet j(order, s);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }
  static Jet constant(double v, int order) { return Jet(order, v); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }
  double value() const { return c_[0]; }
  /// f^{(k)}(s)
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  Jet operator+(const Jet& o) const {
    Jet r = *this;
    for (int k = 0; k <= order(); ++k) r.c_[k] += o.c_[k];
    return r;
  }
  Jet operator-(const Jet& o) const {
    Jet r = *this;
    for (int k = 0; k <= order(); ++k) r.c_[k] -= o.c_[k];
    return r;
  }
  Jet operator-() const { return *this * -1.0; }
  Jet operator+(double v) const {
    Jet r = *this;
    r.c_[0] += v;
    return r;
  }
  Jet operator-(double v) const { return *this + (-v); }
  Jet operator*(double v) const {
    Jet r = *this;
    for (double& x : r.c_) x *= v;
    return r;
  }
  Jet operator*(const Jet& o) const {
    Jet r(order());
    for (int k = 0; k <= order(); ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += c_[j] * o.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }
  Jet operator/(const Jet& o) const {
    if (o.c_[0] == 0.0) throw std::domain_error("Jet division by zero");
    Jet r(order());
    for (int k = 0; k <= order(); ++k) {
      double s = c_[k];
      for (int j = 1; j <= k; ++j) s -= o.c_[j] * r.c_[k - j];
      r.c_[k] = s / o.c_[0];
    }
    return r;
  }

  friend Jet operator*(double v, const Jet& j) { return j * v; }
  friend Jet operator+(double v, const Jet& j) { return j + v; }
  friend Jet operator-(double v, const Jet& j) { return (-j) + v; }
  friend Jet operator/(double v, const Jet& j) { return Jet::constant(v, j.order()) / j; }

  friend Jet pow(const Jet& f, double a) {
    if (f.c_[0] <= 0.0) throw std::domain_error("Jet pow of nonpositive base");
    Jet h(f.order());
    h.c_[0] = std::pow(f.c_[0], a);
    for (int k = 1; k <= f.order(); ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += ((a + 1.0) * j - k) * f.c_[j] * h.c_[k - j];
      h.c_[k] = s / (k * f.c_[0]);
    }
    return h;
  }
  friend Jet exp(const Jet& f) {
    Jet e(f.order());
    e.c_[0] = std::exp(f.c_[0]);
    for (int k = 1; k <= f.order(); ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * f.c_[j] * e.c_[k - j];
      e.c_[k] = s / k;
    }
    return e;
  }
  friend void sincos(const Jet& f, Jet& s, Jet& c) {
    s = Jet(f.order(), std::sin(f.c_[0]));
    c = Jet(f.order(), std::cos(f.c_[0]));
    for (int k = 1; k <= f.order(); ++k) {
      double ss = 0.0, cc = 0.0;
      for (int j = 1; j <= k; ++j) {
        ss += j * f.c_[j] * c.c_[k - j];
        cc -= j * f.c_[j] * s.c_[k - j];
      }
      s.c_[k] = ss / k;
      c.c_[k] = cc / k;
    }
  }
  friend Jet sin(const Jet& f) {
    Jet s, c;
    sincos(f, s, c);
    return s;
  }
  friend Jet cos(const Jet& f) {
    Jet s, c;
    sincos(f, s, c);
    return c;
  }

 private:
  std::vector<double> c_;
};

}  // namespace qtdg
