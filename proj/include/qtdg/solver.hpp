#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qtdg/assembly.hpp"

namespace qtdg {

struct FieldValue {
  double v = 0.0;
  SpacePoint sigma{0.0, 0.0};
};

/// Per-element coefficient vectors over a DiscreteSpace. The mesh must outlive the solution.
class DiscreteSolution {
 public:
  DiscreteSolution() = default;
  DiscreteSolution(const SpaceTimeMesh& mesh, std::shared_ptr<const DiscreteSpace> space,
                   const CoefficientField& coeff);

  const SpaceTimeMesh& mesh() const { return *mesh_; }
  const DiscreteSpace& space() const { return *space_; }
  const CoefficientField& coeff() const { return coeff_; }
  Eigen::VectorXd& coefficients() { return x_; }
  const Eigen::VectorXd& coefficients() const { return x_; }
  Eigen::VectorXd local(int e) const;

  BasisValues basis_values(int e, const std::vector<QuadPoint>& pts, bool derivatives) const;
  /// v and sigma of element e at the points.
  void values(int e, const std::vector<QuadPoint>& pts, Eigen::VectorXd& v,
              std::array<Eigen::VectorXd, 2>& sigma) const;
  FieldValue eval(int e, const STPoint& p) const;
  FieldValue eval(const STPoint& p) const;
  /// Element containing p (closed elements; ties resolved to the lowest id). -1 if outside.
  int locate(const STPoint& p) const;

 private:
  void build_locator();

  const SpaceTimeMesh* mesh_ = nullptr;
  std::shared_ptr<const DiscreteSpace> space_;
  CoefficientField coeff_ = CoefficientField::constant(1, 1.0, 1.0);
  Eigen::VectorXd x_;
  std::shared_ptr<const std::vector<std::vector<int>>> buckets_;
  double bucket_x0_ = 0.0, bucket_dx_ = 1.0;
};

struct SolveOptions {
  int workers = 1;
  int quad_points = 0;
  /// Reuse layer factorizations on uniform slabs when the layer matrices coincide.
  bool reuse_slabs = true;
  bool estimate_condition = false;
  /// Largest block solved with a dense LU.
  int dense_limit = 400;
  double pivot_tol = 1e-13;
  double residual_tol = 1e-9;
};

struct SolveReport {
  std::vector<int> layer_dofs;
  std::vector<int> layer_elements;
  int factorizations = 0;
  double assembly_seconds = 0.0;
  double factor_seconds = 0.0;
  double solve_seconds = 0.0;
  double total_seconds = 0.0;
  double max_residual = 0.0;
  double cond_estimate = -1.0;
  bool ok = true;
  std::string failure;
};

struct SolveResult {
  DiscreteSolution solution;
  SolveReport report;
};

/// Causal layer-by-layer solve. Elements of a layer coupled by time-like faces form one block.
SolveResult solve(const SpaceTimeMesh& mesh, SpaceKind kind, int p, const CoefficientField& coeff,
                  const DGParameters& params, const BoundaryData& data,
                  const SolveOptions& opt = {});

/// Element-local solves on a mesh without time-like faces, scheduled over the causal DAG.
SolveResult solve_tents_parallel(const SpaceTimeMesh& mesh, SpaceKind kind, int p,
                                 const CoefficientField& coeff, const DGParameters& params,
                                 const BoundaryData& data, int workers,
                                 const SolveOptions& opt = {});

/// One sparse LU of the full global system, without causal ordering.
SolveResult solve_monolithic(const SpaceTimeMesh& mesh, SpaceKind kind, int p,
                             const CoefficientField& coeff, const DGParameters& params,
                             const BoundaryData& data, const SolveOptions& opt = {});

/// Hager/Higham estimate of ||A||_1 ||A^{-1}||_1 given solvers for A and A^T.
double condition_estimate_1norm(double norm1,
                                const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& solve,
                                const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& solve_t,
                                int n);
double condition_estimate(const Eigen::MatrixXd& A);
double condition_estimate(const Eigen::SparseMatrix<double>& A);

/// Matrix of the first causal layer (all of its blocks).
Eigen::SparseMatrix<double> first_layer_matrix(const SpaceTimeMesh& mesh, const DiscreteSpace& space,
                                               const CoefficientField& coeff,
                                               const DGParameters& params, int quad_points = 0);

}  // namespace qtdg
