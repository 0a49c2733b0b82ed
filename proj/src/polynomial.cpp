#include "qtdg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qtdg {

MultiIndex MultiIndex::unit(int n, int k) {
  MultiIndex e = zero(n);
  if (k < n)
    e.ix[k] = 1;
  else
    e.it = 1;
  return e;
}

double MultiIndex::factorial() const {
  return qtdg::factorial(ix[0]) * qtdg::factorial(ix[1]) * qtdg::factorial(it);
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  const int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  return std::tie(b.ix[0], b.ix[1], b.it) < std::tie(a.ix[0], a.ix[1], a.it);
}

std::vector<MultiIndex> indices_of_order(int n, int degree) {
  std::vector<MultiIndex> out;
  if (n == 1) {
    for (int i1 = degree; i1 >= 0; --i1) out.emplace_back(1, std::array<int, 2>{i1, 0}, degree - i1);
  } else {
    for (int i1 = degree; i1 >= 0; --i1)
      for (int i2 = degree - i1; i2 >= 0; --i2)
        out.emplace_back(2, std::array<int, 2>{i1, i2}, degree - i1 - i2);
  }
  return out;
}

std::vector<MultiIndex> indices_up_to(int n, int degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= degree; ++d) {
    auto level = indices_of_order(n, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<MultiIndex> spatial_indices_of_order(int n, int order) {
  std::vector<MultiIndex> out;
  if (n == 1) {
    out.push_back(MultiIndex::space(1, order));
  } else {
    for (int i1 = order; i1 >= 0; --i1) out.push_back(MultiIndex::space(2, i1, order - i1));
  }
  return out;
}

std::vector<MultiIndex> spatial_indices_up_to(int n, int order) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= order; ++d) {
    auto level = spatial_indices_of_order(n, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

double factorial(int k) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171, 1.0);
    for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (k < 0) return 0.0;
  if (k > 170) throw std::out_of_range("factorial argument too large");
  return table[k];
}

double falling_factorial(int k, int i) {
  if (i > k) return 0.0;
  double r = 1.0;
  for (int j = 0; j < i; ++j) r *= (k - j);
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

double binomial(const MultiIndex& i, const MultiIndex& j) {
  return binomial(i.ix[0], j.ix[0]) * binomial(i.ix[1], j.ix[1]) * binomial(i.it, j.it);
}

SpaceTimePolynomial::SpaceTimePolynomial(int n, STPoint center, double scale)
    : n_(n), center_(center), scale_(scale) {
  if (n != 1 && n != 2) throw std::invalid_argument("spatial dimension must be 1 or 2");
  if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
}

SpaceTimePolynomial SpaceTimePolynomial::constant(int n, double value, STPoint center,
                                                  double scale) {
  SpaceTimePolynomial f(n, center, scale);
  f.set(MultiIndex::zero(n), value);
  return f;
}

SpaceTimePolynomial SpaceTimePolynomial::monomial(const MultiIndex& k, double coeff,
                                                  STPoint center, double scale) {
  SpaceTimePolynomial f(k.n, center, scale);
  f.set(k, coeff);
  return f;
}

double SpaceTimePolynomial::coeff(const MultiIndex& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void SpaceTimePolynomial::set(const MultiIndex& k, double value) {
  if (k.n != n_) throw std::invalid_argument("multi-index dimension mismatch");
  if (value == 0.0)
    coeffs_.erase(k);
  else
    coeffs_[k] = value;
}

void SpaceTimePolynomial::add(const MultiIndex& k, double value) { set(k, coeff(k) + value); }

void SpaceTimePolynomial::prune(double tol) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) <= tol)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

int SpaceTimePolynomial::degree() const {
  int d = -1;
  for (const auto& [k, a] : coeffs_) d = std::max(d, k.order());
  return d;
}

double SpaceTimePolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, a] : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

double SpaceTimePolynomial::eval(const STPoint& p) const {
  if (coeffs_.empty()) return 0.0;
  const int d = degree();
  std::array<std::vector<double>, 3> pw;
  const double xi[3] = {(p.x[0] - center_.x[0]) / scale_, (p.x[1] - center_.x[1]) / scale_,
                        (p.t - center_.t) / scale_};
  for (int v = 0; v < 3; ++v) {
    pw[v].assign(d + 1, 1.0);
    for (int k = 1; k <= d; ++k) pw[v][k] = pw[v][k - 1] * xi[v];
  }
  double s = 0.0;
  for (const auto& [k, a] : coeffs_) s += a * pw[0][k.ix[0]] * pw[1][k.ix[1]] * pw[2][k.it];
  return s;
}

void SpaceTimePolynomial::check_compatible(const SpaceTimePolynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomial dimension mismatch");
  if (center_.x != o.center_.x || center_.t != o.center_.t || scale_ != o.scale_)
    throw std::invalid_argument("polynomials have different center or scale; rebase first");
}

SpaceTimePolynomial SpaceTimePolynomial::operator+(const SpaceTimePolynomial& o) const {
  check_compatible(o);
  SpaceTimePolynomial r = *this;
  for (const auto& [k, a] : o.coeffs_) r.add(k, a);
  return r;
}

SpaceTimePolynomial SpaceTimePolynomial::operator-(const SpaceTimePolynomial& o) const {
  return *this + o * -1.0;
}

SpaceTimePolynomial SpaceTimePolynomial::operator*(double s) const {
  SpaceTimePolynomial r(n_, center_, scale_);
  if (s == 0.0) return r;
  for (const auto& [k, a] : coeffs_) r.set(k, a * s);
  return r;
}

double eval(const SpaceTimePolynomial& f, const STPoint& p) { return f.eval(p); }

SpaceTimePolynomial derive(const SpaceTimePolynomial& f, const MultiIndex& i) {
  if (i.n != f.n()) throw std::invalid_argument("multi-index dimension mismatch");
  SpaceTimePolynomial r(f.n(), f.center(), f.scale());
  const double inv = std::pow(f.scale(), -i.order());
  for (const auto& [k, a] : f.coeffs()) {
    if (!i.leq(k)) continue;
    const double c = falling_factorial(k.ix[0], i.ix[0]) * falling_factorial(k.ix[1], i.ix[1]) *
                     falling_factorial(k.it, i.it);
    r.add(k - i, a * c * inv);
  }
  return r;
}

SpaceTimePolynomial multiply(const SpaceTimePolynomial& f, const SpaceTimePolynomial& g) {
  if (f.n() != g.n()) throw std::invalid_argument("polynomial dimension mismatch");
  if (f.center().x != g.center().x || f.center().t != g.center().t || f.scale() != g.scale())
    throw std::invalid_argument("polynomials have different center or scale; rebase first");
  std::map<MultiIndex, double> acc;
  for (const auto& [k1, a1] : f.coeffs())
    for (const auto& [k2, a2] : g.coeffs()) acc[k1 + k2] += a1 * a2;
  SpaceTimePolynomial r(f.n(), f.center(), f.scale());
  for (const auto& [k, a] : acc) r.set(k, a);
  return r;
}

SpaceTimePolynomial rebase(const SpaceTimePolynomial& f, const STPoint& center, double scale) {
  const int n = f.n();
  // old variable v = (new_scale * new_var + (new_center - old_center)) / old_scale
  std::array<SpaceTimePolynomial, 3> lin;
  const double shift[3] = {center.x[0] - f.center().x[0], center.x[1] - f.center().x[1],
                           center.t - f.center().t};
  for (int v = 0; v <= n; ++v) {
    SpaceTimePolynomial l(n, center, scale);
    l.set(MultiIndex::zero(n), shift[v == n ? 2 : v] / f.scale());
    l.set(MultiIndex::unit(n, v), scale / f.scale());
    lin[v] = l;
  }
  const int d = std::max(f.degree(), 0);
  std::array<std::vector<SpaceTimePolynomial>, 3> pw;
  for (int v = 0; v <= n; ++v) {
    pw[v].push_back(SpaceTimePolynomial::constant(n, 1.0, center, scale));
    for (int k = 1; k <= d; ++k) pw[v].push_back(multiply(pw[v].back(), lin[v]));
  }
  SpaceTimePolynomial r(n, center, scale);
  for (const auto& [k, a] : f.coeffs()) {
    SpaceTimePolynomial term = multiply(pw[0][k.ix[0]], pw[n][k.it]);
    if (n == 2) term = multiply(term, pw[1][k.ix[1]]);
    r = r + term * a;
  }
  return r;
}

double derivative_at_center(const SpaceTimePolynomial& f, const MultiIndex& i) {
  return f.coeff(i) * i.factorial() * std::pow(f.scale(), -i.order());
}

SpaceTimePolynomial taylor_polynomial(const std::map<MultiIndex, double>& derivatives, int m,
                                      int n, const STPoint& center, double scale) {
  SpaceTimePolynomial r(n, center, scale);
  for (const auto& i : indices_up_to(n, m)) {
    auto it = derivatives.find(i);
    if (it == derivatives.end())
      throw std::invalid_argument("taylor_polynomial: missing derivative of order " +
                                  std::to_string(i.order()));
    r.set(i, it->second * std::pow(scale, i.order()) / i.factorial());
  }
  return r;
}

void dump(std::ostream& os, const SpaceTimePolynomial& f) {
  for (const auto& [k, a] : f.coeffs()) {
    os << k.ix[0] << ' ';
    if (f.n() == 2) os << k.ix[1] << ' ';
    os << k.it << ' ' << std::setprecision(17) << a << '\n';
  }
}

std::string dump(const SpaceTimePolynomial& f) {
  std::ostringstream os;
  dump(os, f);
  return os.str();
}

SpaceTimePolynomial parse_dump(std::istream& is, int n, STPoint center, double scale) {
  SpaceTimePolynomial f(n, center, scale);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    MultiIndex k = MultiIndex::zero(n);
    double a = 0.0;
    ls >> k.ix[0];
    if (n == 2) ls >> k.ix[1];
    ls >> k.it >> a;
    if (!ls) throw std::invalid_argument("malformed polynomial line: " + line);
    f.add(k, a);
  }
  return f;
}

}  // namespace qtdg
