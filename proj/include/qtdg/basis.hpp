#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qtdg/coefficients.hpp"
#include "qtdg/mesh.hpp"
#include "qtdg/polynomial.hpp"
#include "qtdg/quadrature.hpp"

namespace qtdg {

enum class SpaceKind { QW, QT, Y, W };
std::string to_string(SpaceKind k);
SpaceKind parse_space_kind(const std::string& s);

/// N(n,p) = binom(p+n,n) + binom(p-1+n,n)
int qu_dimension(int n, int p);
int qw_dimension(int n, int p);
int qt_dimension(int n, int p);
int y_dimension(int n, int p);
int space_dimension(SpaceKind kind, int n, int p);

struct ScalarBasis {
  int p = 0;
  int n = 1;
  STPoint center;
  double scale = 1.0;
  std::vector<SpaceTimePolynomial> b;
};

/// Quasi-Trefftz basis of QU^p(K) from Cauchy data seeded with scaled monomials.
ScalarBasis build_qu_basis(int p, const TaylorData& taylor, const STPoint& center,
                           double scale = 1.0);

/// D^i (div(1/rho grad f) - G d_t^2 f)(x_K, t_K) for |i| <= up_to.
std::map<MultiIndex, double> quasi_trefftz_residuals(const SpaceTimePolynomial& f,
                                                     const TaylorData& taylor, int up_to);

enum class WeightKind { None, ExactInvRho };

/// (w, tau) with tau = weight * tau_poly.
struct VectorBasisElement {
  SpaceKind kind = SpaceKind::QW;
  SpaceTimePolynomial w;
  std::vector<SpaceTimePolynomial> tau;
  /// Potential u (QW, Y, W); empty for QT.
  SpaceTimePolynomial u;
  WeightKind weight = WeightKind::None;
};

/// Fields of QT^p(K); the vector constraint uses the Taylor coefficients of rho.
std::vector<VectorBasisElement> build_qt_basis(int p, const TaylorData& taylor,
                                               const STPoint& center, double scale = 1.0);

/// D^i (grad w + rho d_t tau) and D^i (div tau + G d_t w) at the center, |i| <= up_to.
/// Entry [0] is the scalar residual, [1..n] the vector components.
std::map<MultiIndex, std::array<double, 3>> qt_residuals(const VectorBasisElement& e,
                                                         const TaylorData& taylor, int up_to);

std::vector<VectorBasisElement> build_vector_space(SpaceKind kind, int p, const STPoint& center,
                                                   double scale, const CoefficientField& coeff);
std::vector<VectorBasisElement> build_vector_space(SpaceKind kind, int p, const Element& K,
                                                   const CoefficientField& coeff);

/// Taylor polynomial T^{p+1}_K[u] from D^i u(x_K, t_K), |i| <= p.
SpaceTimePolynomial taylor_project_solution(const std::function<double(const MultiIndex&)>& d,
                                            int n, const STPoint& center, int p,
                                            double scale = 1.0);

/// Dense coefficient form of a local vector basis over the scaled monomials.
struct LocalBasis {
  SpaceKind kind = SpaceKind::QW;
  int n = 1;
  int p = 0;
  int dim = 0;
  int degree = 0;
  double scale = 1.0;
  WeightKind weight = WeightKind::None;
  std::vector<MultiIndex> monomials;
  Eigen::MatrixXd W;                  // dim x nmono
  std::array<Eigen::MatrixXd, 2> Tau;  // dim x nmono each

  static LocalBasis from_elements(const std::vector<VectorBasisElement>& elems, int n, int p,
                                  SpaceKind kind);
};

/// Basis values at a set of points; every matrix is (npoints x dim).
struct BasisValues {
  Eigen::MatrixXd w, dtw, divtau;
  std::array<Eigen::MatrixXd, 2> tau, dttau, dxw;
};

BasisValues evaluate_basis(const LocalBasis& basis, const STPoint& center,
                           const std::vector<QuadPoint>& pts, const CoefficientField& coeff,
                           bool derivatives);

struct DiscreteSpace {
  SpaceKind kind = SpaceKind::QW;
  int p = 0;
  int n = 1;
  std::vector<std::shared_ptr<const LocalBasis>> local;
  std::vector<STPoint> centers;
  std::vector<int> offset;
  int ndof = 0;

  int dim(int e) const { return local[e]->dim; }
};

/// Builds per-element bases; elements with equal spatial center and scale share one basis.
DiscreteSpace build_discrete_space(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                                   SpaceKind kind, int p);

}  // namespace qtdg
