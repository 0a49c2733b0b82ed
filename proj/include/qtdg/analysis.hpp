#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qtdg/solver.hpp"

namespace qtdg {

/// Exact (v, sigma); both functions must be set.
struct ExactSolution {
  ScalarData v;
  VectorData sigma;
};

/// Squared contributions to the DG and DG+ norms, grouped by face/volume set.
struct DGNormTerms {
  double space_jump = 0.0;     // (1-gamma)/n^t weighted jumps on internal space-like faces
  double initial_final = 0.0;  // F^0 and F^T
  double time_jump = 0.0;      // alpha, beta jumps on internal time-like faces
  double dirichlet = 0.0;
  double neumann = 0.0;
  double robin = 0.0;
  double volume = 0.0;  // mu1, mu2 weighted residuals
  // DG+ extras
  double plus_space = 0.0;
  double plus_time = 0.0;
  double plus_boundary = 0.0;
  double plus_volume = 0.0;

  double dg_squared() const {
    return space_jump + initial_final + time_jump + dirichlet + neumann + robin + volume;
  }
  double dg_plus_squared() const {
    return dg_squared() + plus_space + plus_time + plus_boundary + plus_volume;
  }
};

/// Terms of the norm of (discrete - exact); a null exact pointer measures the discrete field.
/// Volume residual terms use only the discrete field, the exact solution solving the PDE.
DGNormTerms dg_norm_terms(const DiscreteSolution& sol, const ExactSolution* exact,
                          const DGParameters& params, bool plus = false, int quad_points = 0);
double dg_norm_error(const DiscreteSolution& sol, const ExactSolution& exact,
                     const DGParameters& params, int quad_points = 0);
double dg_plus_norm_error(const DiscreteSolution& sol, const ExactSolution& exact,
                          const DGParameters& params, int quad_points = 0);
/// DG norm of the discrete field itself.
double dg_norm(const DiscreteSolution& sol, const DGParameters& params, int quad_points = 0);

/// Quadrature on the slice {t} x Omega, split so that each piece lies in one element.
/// Points on element interfaces belong to the earlier element.
struct SliceCell {
  int element = -1;
  std::vector<QuadPoint> points;
};
std::vector<SliceCell> slice_quadrature(const DiscreteSolution& sol, double t, int npts);

/// (||sqrt(G)(v - v_h)||^2 + ||sqrt(rho)(sigma - sigma_h)||^2)^{1/2} at t = T.
double final_time_error(const DiscreteSolution& sol, const ExactSolution& exact,
                        int quad_points = 0);
/// Same weighted distance between two discrete solutions at t = T (reference comparisons).
double final_time_difference(const DiscreteSolution& a, const DiscreteSolution& b,
                             int quad_points = 0);

/// 1/2 int (G v^2 + rho |sigma|^2) dx on the slice t.
double energy_at_time(const DiscreteSolution& sol, double t, int quad_points = 0);
/// Energy on the causal fronts: entry 0 is the initial data (or the t = 0 trace when the
/// data are not given), entry j the upper boundary of layers 0..j-1, using upwind traces.
std::vector<double> front_energies(const DiscreteSolution& sol, const BoundaryData* initial,
                                   int quad_points = 0);
/// Energy of the exact field on the slice t.
double exact_energy_at_time(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                            const ExactSolution& exact, double t, int npts = 8);

/// rate_k = log(e_{k-1}/e_k) / log(h_{k-1}/h_k); throws on nonpositive errors.
std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs);

struct ElementQuality {
  double xi_time = 0.0;
  double xi_space = 0.0;
  double xi = 0.0;
  double eta = 0.0;
};
std::vector<ElementQuality> mesh_quality(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                                         const DGParameters& params);

/// Samples (v, sigma) on an nx (x ny) grid at time t. format is "csv" or "vtk".
void export_snapshot(std::ostream& os, const DiscreteSolution& sol, double t, int nx, int ny,
                     const std::string& format);

}  // namespace qtdg
