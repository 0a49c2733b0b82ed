#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qtdg/basis.hpp"
#include "qtdg/coefficients.hpp"
#include "qtdg/mesh.hpp"

namespace qtdg {

/// How a flux or penalty parameter is chosen.
struct ParamRule {
  enum Kind { Zero, Default, Constant };
  Kind kind = Default;
  double value = 0.0;

  static ParamRule zero() { return {Zero, 0.0}; }
  static ParamRule standard() { return {Default, 0.0}; }
  static ParamRule constant(double v) { return {Constant, v}; }
};

std::string to_string(const ParamRule& r);
/// "zero", "default" or a number.
ParamRule parse_param_rule(const std::string& s);

struct DGParameters {
  std::string policy = "paper-default";
  ParamRule alpha, beta, delta, theta, mu1, mu2;
  /// Element values of mu_1, mu_2 (resolved against the mesh).
  std::vector<double> mu1_K, mu2_K;

  double alpha_at(const CoefficientField& c, const SpacePoint& x) const;
  double beta_at(const CoefficientField& c, const SpacePoint& x) const;
  double theta_at(const CoefficientField& c, const SpacePoint& x) const;
  double delta_at(const CoefficientField& c, const SpacePoint& x) const;
  /// True if any of alpha, beta, mu1, mu2 is not strictly positive.
  bool zero_warning() const;
};

/// alpha = 1/beta = (rho c)^{-1}, theta = sqrt(G/rho), delta = c^2 theta^2 / (1 + c^2 theta^2),
/// mu1 = mu2 = r_{K,c} / sup_K c.
DGParameters default_parameters(const SpaceTimeMesh& mesh, const CoefficientField& coeff);
DGParameters zero_parameters(const SpaceTimeMesh& mesh, const CoefficientField& coeff);
DGParameters make_parameters(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                             ParamRule alpha, ParamRule beta, ParamRule mu1, ParamRule mu2,
                             ParamRule delta = ParamRule::standard(),
                             ParamRule theta = ParamRule::standard());

using ScalarData = std::function<double(const STPoint&)>;
using VectorData = std::function<SpacePoint(const STPoint&)>;

struct BoundaryData {
  ScalarData v0;
  VectorData sigma0;
  ScalarData gD, gN, gR;

  /// All data zero.
  static BoundaryData homogeneous();
};

struct AssemblyContext {
  const SpaceTimeMesh& mesh;
  const DiscreteSpace& space;
  const CoefficientField& coeff;
  const DGParameters& params;
  const BoundaryData& data;
  /// Gauss points per direction; 0 means p + 3.
  int quad_points = 0;

  int npts() const { return quad_points > 0 ? quad_points : space.p + 3; }
};

/// Volume term and GLS penalty of element e; rows are test functions, columns trial functions.
Eigen::MatrixXd volume_matrix(const AssemblyContext& ctx, int e);

/// Face contributions. Slot 0 is `before`, slot 1 is `after`.
/// M[a][b] couples test functions of slot a with trial functions of slot b.
struct FaceMatrices {
  std::array<int, 2> element{-1, -1};
  std::array<std::array<Eigen::MatrixXd, 2>, 2> M;
  std::array<Eigen::VectorXd, 2> rhs;
};

FaceMatrices face_matrices(const AssemblyContext& ctx, int f);

/// Only the right-hand side of a face (initial and boundary faces, zero otherwise).
FaceMatrices face_rhs(const AssemblyContext& ctx, int f);

/// Global sparse matrix of A and vector of l.
Eigen::SparseMatrix<double> assemble_global(const AssemblyContext& ctx, Eigen::VectorXd& rhs);

/// A(x; y) for global coefficient vectors (x trial, y test).
double bilinear_form(const AssemblyContext& ctx, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace qtdg
