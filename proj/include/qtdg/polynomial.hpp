#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace qtdg {

/// Point in space-time. Only the first n entries of x are meaningful.
struct STPoint {
  std::array<double, 2> x{0.0, 0.0};
  double t = 0.0;
};

/// Space-time multi-index (i_x, i_t) with n spatial entries.
struct MultiIndex {
  int n = 1;
  std::array<int, 2> ix{0, 0};
  int it = 0;

  MultiIndex() = default;
  MultiIndex(int n_, std::array<int, 2> ix_, int it_) : n(n_), ix(ix_), it(it_) {
    if (n_ == 1) ix[1] = 0;
  }
  static MultiIndex zero(int n) { return MultiIndex(n, {0, 0}, 0); }
  static MultiIndex space(int n, int i1, int i2 = 0) { return MultiIndex(n, {i1, i2}, 0); }
  static MultiIndex unit(int n, int k);  // k < n: e_{x_k}; k == n: e_t

  int space_order() const { return ix[0] + ix[1]; }
  int order() const { return space_order() + it; }
  bool leq(const MultiIndex& o) const {
    return ix[0] <= o.ix[0] && ix[1] <= o.ix[1] && it <= o.it;
  }
  double factorial() const;  // i! = i_x1! i_x2! i_t!

  MultiIndex operator+(const MultiIndex& o) const {
    return MultiIndex(n, {ix[0] + o.ix[0], ix[1] + o.ix[1]}, it + o.it);
  }
  MultiIndex operator-(const MultiIndex& o) const {
    return MultiIndex(n, {ix[0] - o.ix[0], ix[1] - o.ix[1]}, it - o.it);
  }
  bool operator==(const MultiIndex& o) const {
    return ix == o.ix && it == o.it;
  }
  bool operator!=(const MultiIndex& o) const { return !(*this == o); }
};

/// Graded lexicographic order: total order first, then x1, x2, t descending.
bool operator<(const MultiIndex& a, const MultiIndex& b);

/// All space-time multi-indices with |i| <= degree, graded lexicographic.
std::vector<MultiIndex> indices_up_to(int n, int degree);
/// All space-time multi-indices with |i| == degree.
std::vector<MultiIndex> indices_of_order(int n, int degree);
/// Spatial multi-indices (it = 0) with |i_x| == order.
std::vector<MultiIndex> spatial_indices_of_order(int n, int order);
/// Spatial multi-indices with |i_x| <= order.
std::vector<MultiIndex> spatial_indices_up_to(int n, int order);

/// k! as a double; exact for k <= 22.
double factorial(int k);
/// k (k-1) ... (k-i+1)
double falling_factorial(int k, int i);
double binomial(int n, int k);
/// Multi-index binomial binom(i, j) = prod binom(i_l, j_l).
double binomial(const MultiIndex& i, const MultiIndex& j);

/// Polynomial in the scaled variables ((x - x_K)/s, (t - t_K)/s).
class SpaceTimePolynomial {
 public:
  using Map = std::map<MultiIndex, double>;

  SpaceTimePolynomial() = default;
  explicit SpaceTimePolynomial(int n, STPoint center = {}, double scale = 1.0);

  static SpaceTimePolynomial constant(int n, double value, STPoint center = {},
                                      double scale = 1.0);
  static SpaceTimePolynomial monomial(const MultiIndex& k, double coeff = 1.0,
                                      STPoint center = {}, double scale = 1.0);

  int n() const { return n_; }
  const STPoint& center() const { return center_; }
  double scale() const { return scale_; }
  const Map& coeffs() const { return coeffs_; }

  double coeff(const MultiIndex& k) const;
  void set(const MultiIndex& k, double value);
  void add(const MultiIndex& k, double value);
  /// Removes entries with |a_k| <= tol.
  void prune(double tol = 0.0);

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return coeffs_.empty(); }
  double max_abs_coeff() const;

  double eval(const STPoint& p) const;

  SpaceTimePolynomial operator+(const SpaceTimePolynomial& o) const;
  SpaceTimePolynomial operator-(const SpaceTimePolynomial& o) const;
  SpaceTimePolynomial operator*(double s) const;

 private:
  void check_compatible(const SpaceTimePolynomial& o) const;

  int n_ = 1;
  STPoint center_{};
  double scale_ = 1.0;
  Map coeffs_;
};

double eval(const SpaceTimePolynomial& f, const STPoint& p);
SpaceTimePolynomial derive(const SpaceTimePolynomial& f, const MultiIndex& i);
SpaceTimePolynomial multiply(const SpaceTimePolynomial& f, const SpaceTimePolynomial& g);
/// Same polynomial re-expanded around a new center and scale.
SpaceTimePolynomial rebase(const SpaceTimePolynomial& f, const STPoint& center, double scale);

/// D^i f at the center of f, for the unscaled variables.
double derivative_at_center(const SpaceTimePolynomial& f, const MultiIndex& i);

/// Taylor polynomial sum_{|i|<=m} D^i f(x_K,t_K) (x-x_K)^{i_x} (t-t_K)^{i_t} / i!.
/// Throws std::invalid_argument if a derivative with |i| <= m is missing.
SpaceTimePolynomial taylor_polynomial(const std::map<MultiIndex, double>& derivatives, int m,
                                      int n, const STPoint& center, double scale = 1.0);

/// Lines "i_x1 ... i_xn i_t coefficient" in graded lexicographic order.
void dump(std::ostream& os, const SpaceTimePolynomial& f);
std::string dump(const SpaceTimePolynomial& f);
SpaceTimePolynomial parse_dump(std::istream& is, int n, STPoint center = {}, double scale = 1.0);

}  // namespace qtdg
