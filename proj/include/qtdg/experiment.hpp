#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtdg/benchmarks.hpp"

namespace qtdg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment description, read from an INI file:
///
///   [problem]         name
///   [discretization]  space (list), p (list), mesh = cartesian|prism|tent, h (list)
///                     or h0 + levels (h = h0 2^-k, "1-5" or a list), tent_safety
///   [parameters]      policy = paper-default|zero|custom; alpha, beta, delta, theta, mu1, mu2
///                     (custom only: "default", "zero" or a number)
///   [solver]          method = layers|monolithic, workers, quad_order, estimate_condition,
///                     dense_limit, pivot_tol
///   [reference]       factor (problems without exact solution: h_ref = h_min / factor)
///   [output]          dir, snapshot_times, snapshot_nx, snapshot_ny, snapshot_format
struct RunConfig {
  std::string problem;
  std::vector<SpaceKind> spaces{SpaceKind::QW};
  std::vector<int> ps;
  std::string mesh = "cartesian";
  std::vector<double> hs;
  double tent_safety = 0.9;
  std::string policy = "paper-default";
  ParamRule alpha, beta, delta, theta, mu1, mu2;
  std::string method = "layers";
  int workers = 1;
  int quad_points = 0;
  bool estimate_condition = false;
  int dense_limit = SolveOptions{}.dense_limit;
  double pivot_tol = SolveOptions{}.pivot_tol;
  int reference_factor = 8;
  std::string out_dir;
  std::vector<double> snapshot_times;
  int snapshot_nx = 101;
  int snapshot_ny = 101;
  std::string snapshot_format = "csv";
};

/// Throws ConfigError on syntax errors, unknown keys or invalid values.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Mesh of the benchmark domain with spacing h (time step T / ceil(T / h) on slabs).
SpaceTimeMesh make_mesh(const BenchmarkProblem& problem, const RunConfig& cfg, double h);
DGParameters make_run_parameters(const RunConfig& cfg, const SpaceTimeMesh& mesh,
                                 const CoefficientField& coeff);

struct ResultRow {
  SpaceKind space = SpaceKind::QW;
  double h = 0.0;
  int p = 0;
  int ndof = 0;
  double dg_error = 0.0;  // NaN without exact solution
  double dg_rate = 0.0;   // NaN on the first row of a sequence
  double ft_error = 0.0;
  double ft_rate = 0.0;
  double solve_seconds = 0.0;
  double cond_estimate = 0.0;  // NaN unless requested
  double energy_loss_fraction = 0.0;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// One row per (p, h) for the given space, p outer. Progress lines go to log if non-null.
std::vector<ResultRow> run_experiment(const RunConfig& cfg, SpaceKind space,
                                      std::ostream* log = nullptr);

/// h,p,ndof,dg_error,dg_rate,ft_error,ft_rate,solve_seconds,cond_estimate,
/// energy_loss_fraction,status; compare output prepends a space column.
/// Missing values are written as empty fields.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool space_column);

}  // namespace qtdg
