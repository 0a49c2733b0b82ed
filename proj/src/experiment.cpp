#include "qtdg/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace qtdg {

namespace pt = boost::property_tree;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ConfigError(key + ": not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& key, const std::string& s) {
  const double v = to_double(key, s);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": not an integer: '" + s + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(key + ": expected true or false");
}

/// "1-5" or "1, 2, 3"
std::vector<int> int_range(const std::string& key, const std::string& s) {
  const auto dash = s.find('-', 1);
  if (dash != std::string::npos && s.find(',') == std::string::npos) {
    const int a = to_int(key, trim(s.substr(0, dash))), b = to_int(key, trim(s.substr(dash + 1)));
    if (b < a) throw ConfigError(key + ": empty range");
    std::vector<int> r;
    for (int k = a; k <= b; ++k) r.push_back(k);
    return r;
  }
  std::vector<int> r;
  for (const auto& t : split_list(s)) r.push_back(to_int(key, t));
  return r;
}

const std::map<std::string, std::set<std::string>> kKeys = {
    {"problem", {"name"}},
    {"discretization", {"space", "p", "mesh", "h", "h0", "levels", "tent_safety"}},
    {"parameters", {"policy", "alpha", "beta", "delta", "theta", "mu1", "mu2"}},
    {"solver", {"method", "workers", "quad_order", "estimate_condition", "dense_limit",
                "pivot_tol"}},
    {"reference", {"factor"}},
    {"output", {"dir", "snapshot_times", "snapshot_nx", "snapshot_ny", "snapshot_format"}},
};

}  // namespace

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    auto it = kKeys.find(section);
    if (it == kKeys.end()) throw ConfigError("unknown section [" + section + "]");
    if (body.empty() && !body.data().empty())
      throw ConfigError("key outside a section: " + section);
    for (const auto& kv : body)
      if (!it->second.count(kv.first)) throw ConfigError("unknown key " + section + "." + kv.first);
  }
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(path)) return trim(*v);
    return std::nullopt;
  };

  RunConfig c;
  if (auto v = get("problem.name")) c.problem = *v;
  if (c.problem.empty()) throw ConfigError("problem.name is required");
  try {
    benchmark(c.problem);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (auto v = get("discretization.space")) {
    c.spaces.clear();
    for (const auto& s : split_list(*v)) {
      try {
        c.spaces.push_back(parse_space_kind(s));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    if (c.spaces.empty()) throw ConfigError("discretization.space is empty");
  }
  if (auto v = get("discretization.p")) c.ps = int_range("discretization.p", *v);
  if (c.ps.empty()) throw ConfigError("discretization.p is required");
  for (int p : c.ps)
    if (p < 0) throw ConfigError("discretization.p must be nonnegative");
  if (auto v = get("discretization.mesh")) c.mesh = *v;
  if (c.mesh != "cartesian" && c.mesh != "prism" && c.mesh != "tent")
    throw ConfigError("discretization.mesh must be cartesian, prism or tent");
  if (auto v = get("discretization.h")) {
    if (get("discretization.levels")) throw ConfigError("give either h or h0 + levels");
    for (const auto& t : split_list(*v)) c.hs.push_back(to_double("discretization.h", t));
  } else if (auto lv = get("discretization.levels")) {
    auto h0 = get("discretization.h0");
    if (!h0) throw ConfigError("discretization.levels needs discretization.h0");
    const double base = to_double("discretization.h0", *h0);
    for (int k : int_range("discretization.levels", *lv)) c.hs.push_back(std::ldexp(base, -k));
  }
  if (c.hs.empty()) throw ConfigError("mesh sizes are required (h, or h0 and levels)");
  for (std::size_t k = 0; k < c.hs.size(); ++k) {
    if (!(c.hs[k] > 0.0)) throw ConfigError("mesh sizes must be positive");
    if (k > 0 && !(c.hs[k] < c.hs[k - 1])) throw ConfigError("mesh sizes must strictly decrease");
  }
  if (auto v = get("discretization.tent_safety")) {
    c.tent_safety = to_double("discretization.tent_safety", *v);
    if (!(c.tent_safety > 0.0 && c.tent_safety <= 1.0))
      throw ConfigError("discretization.tent_safety must lie in (0, 1]");
  }

  if (auto v = get("parameters.policy")) c.policy = *v;
  if (c.policy != "paper-default" && c.policy != "zero" && c.policy != "custom")
    throw ConfigError("parameters.policy must be paper-default, zero or custom");
  const std::pair<const char*, ParamRule*> rules[] = {
      {"alpha", &c.alpha}, {"beta", &c.beta}, {"delta", &c.delta},
      {"theta", &c.theta}, {"mu1", &c.mu1},   {"mu2", &c.mu2}};
  for (const auto& [name, rule] : rules) {
    auto v = get(std::string("parameters.") + name);
    if (!v) continue;
    if (c.policy != "custom")
      throw ConfigError(std::string("parameters.") + name + " needs policy = custom");
    try {
      *rule = parse_param_rule(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("parameters.") + name + ": " + e.what());
    }
  }

  if (auto v = get("solver.method")) c.method = *v;
  if (c.method != "layers" && c.method != "monolithic")
    throw ConfigError("solver.method must be layers or monolithic");
  if (auto v = get("solver.workers")) c.workers = to_int("solver.workers", *v);
  if (c.workers < 1) throw ConfigError("solver.workers must be positive");
  if (auto v = get("solver.quad_order")) c.quad_points = to_int("solver.quad_order", *v);
  if (c.quad_points < 0) throw ConfigError("solver.quad_order must be nonnegative");
  if (auto v = get("solver.estimate_condition"))
    c.estimate_condition = to_bool("solver.estimate_condition", *v);
  if (auto v = get("solver.dense_limit")) c.dense_limit = to_int("solver.dense_limit", *v);
  if (auto v = get("solver.pivot_tol")) c.pivot_tol = to_double("solver.pivot_tol", *v);

  if (auto v = get("reference.factor")) c.reference_factor = to_int("reference.factor", *v);
  if (c.reference_factor < 1) throw ConfigError("reference.factor must be positive");

  if (auto v = get("output.dir")) c.out_dir = *v;
  if (auto v = get("output.snapshot_times"))
    for (const auto& t : split_list(*v)) c.snapshot_times.push_back(to_double("output.snapshot_times", t));
  if (auto v = get("output.snapshot_nx")) c.snapshot_nx = to_int("output.snapshot_nx", *v);
  if (auto v = get("output.snapshot_ny")) c.snapshot_ny = to_int("output.snapshot_ny", *v);
  if (auto v = get("output.snapshot_format")) c.snapshot_format = *v;
  if (c.snapshot_format != "csv" && c.snapshot_format != "vtk")
    throw ConfigError("output.snapshot_format must be csv or vtk");
  if (c.snapshot_nx < 2 || c.snapshot_ny < 2) throw ConfigError("snapshot grids need 2 points");

  const auto problem = benchmark(c.problem);
  if (problem.n == 1 && c.mesh == "prism") throw ConfigError("prism meshes need a 2D problem");
  if (problem.n == 2 && c.mesh != "prism") throw ConfigError("2D problems need mesh = prism");
  for (double t : c.snapshot_times)
    if (t < 0.0 || t > problem.T) throw ConfigError("snapshot time outside [0, T]");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return parse_config(in);
}

SpaceTimeMesh make_mesh(const BenchmarkProblem& P, const RunConfig& cfg, double h) {
  const double L = P.hi[0] - P.lo[0];
  const int nx = std::max(1, static_cast<int>(std::lround(L / h)));
  const int nt = std::max(1, static_cast<int>(std::ceil(P.T / h - 1e-9)));
  if (cfg.mesh == "cartesian") return build_cartesian_1d(P.lo[0], P.hi[0], nx, P.T, nt, P.coeff, P.bc);
  if (cfg.mesh == "prism") return build_prism_2d(nx, P.T, nt, P.coeff, P.bc, P.lo, P.hi);
  std::vector<double> x;
  for (int i = 0; i <= nx; ++i) x.push_back(P.lo[0] + L * i / nx);
  return pitch_tents_1d(x, P.T, P.coeff, cfg.tent_safety, P.bc);
}

DGParameters make_run_parameters(const RunConfig& cfg, const SpaceTimeMesh& mesh,
                                 const CoefficientField& coeff) {
  if (cfg.policy == "zero") return zero_parameters(mesh, coeff);
  if (cfg.policy == "paper-default") return default_parameters(mesh, coeff);
  return make_parameters(mesh, coeff, cfg.alpha, cfg.beta, cfg.mu1, cfg.mu2, cfg.delta, cfg.theta);
}

namespace {

SolveResult run_solve(const RunConfig& cfg, const SpaceTimeMesh& m, SpaceKind space, int p,
                      const CoefficientField& coeff, const DGParameters& P,
                      const BoundaryData& data) {
  SolveOptions o;
  o.workers = cfg.workers;
  o.quad_points = cfg.quad_points;
  o.estimate_condition = cfg.estimate_condition;
  o.dense_limit = cfg.dense_limit;
  o.pivot_tol = cfg.pivot_tol;
  if (cfg.method == "monolithic") return solve_monolithic(m, space, p, coeff, P, data, o);
  if (cfg.workers > 1 && cfg.mesh == "tent")
    return solve_tents_parallel(m, space, p, coeff, P, data, cfg.workers, o);
  return solve(m, space, p, coeff, P, data, o);
}

void write_snapshots(const RunConfig& cfg, const DiscreteSolution& sol, SpaceKind space, int p) {
  for (std::size_t k = 0; k < cfg.snapshot_times.size(); ++k) {
    std::ostringstream name;
    name << cfg.out_dir << "/snapshot_" << to_string(space) << "_p" << p << "_" << k << '.'
         << cfg.snapshot_format;
    std::ofstream os(name.str());
    if (!os) throw std::runtime_error("cannot write " + name.str());
    export_snapshot(os, sol, cfg.snapshot_times[k], cfg.snapshot_nx, cfg.snapshot_ny,
                    cfg.snapshot_format);
  }
}

void fill_rates(std::vector<ResultRow>& rows) {
  auto rate = [](double e0, double e1, double h0, double h1) {
    if (!(e0 > 0.0) || !(e1 > 0.0)) return kNaN;
    return std::log(e0 / e1) / std::log(h0 / h1);
  };
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].dg_rate = rows[k].ft_rate = kNaN;
    if (k == 0 || rows[k - 1].p != rows[k].p || !rows[k].ok() || !rows[k - 1].ok()) continue;
    const auto& a = rows[k - 1];
    const auto& b = rows[k];
    rows[k].dg_rate = rate(a.dg_error, b.dg_error, a.h, b.h);
    rows[k].ft_rate = rate(a.ft_error, b.ft_error, a.h, b.h);
  }
}

}  // namespace

std::vector<ResultRow> run_experiment(const RunConfig& cfg, SpaceKind space, std::ostream* log) {
  const BenchmarkProblem problem = benchmark(cfg.problem);
  std::vector<ResultRow> rows;
  for (int p : cfg.ps) {
    // the solution refers to its mesh
    std::optional<SpaceTimeMesh> ref_mesh;
    std::optional<SolveResult> reference;
    if (!problem.has_exact) {
      const double href = cfg.hs.back() / cfg.reference_factor;
      ref_mesh = make_mesh(problem, cfg, href);
      const auto P = make_run_parameters(cfg, *ref_mesh, problem.coeff);
      if (log) *log << "reference p=" << p << " h=" << href << '\n';
      reference = run_solve(cfg, *ref_mesh, space, p, problem.coeff, P, problem.data(&P));
      if (!reference->report.ok)
        throw std::runtime_error("reference solve failed: " + reference->report.failure);
    }
    for (std::size_t k = 0; k < cfg.hs.size(); ++k) {
      const double h = cfg.hs[k];
      const auto m = make_mesh(problem, cfg, h);
      const auto P = make_run_parameters(cfg, m, problem.coeff);
      const auto data = problem.data(&P);
      auto r = run_solve(cfg, m, space, p, problem.coeff, P, data);
      ResultRow row;
      row.space = space;
      row.h = h;
      row.p = p;
      row.ndof = r.solution.space().ndof;
      row.solve_seconds = r.report.total_seconds;
      row.cond_estimate = cfg.estimate_condition ? r.report.cond_estimate : kNaN;
      row.dg_error = row.ft_error = row.energy_loss_fraction = kNaN;
      if (!r.report.ok) {
        row.status = "failed: " + r.report.failure;
      } else {
        if (problem.has_exact) {
          row.dg_error = dg_norm_error(r.solution, problem.exact, P, cfg.quad_points);
          row.ft_error = final_time_error(r.solution, problem.exact, cfg.quad_points);
        } else {
          row.ft_error = final_time_difference(r.solution, reference->solution, cfg.quad_points);
        }
        const auto E = front_energies(r.solution, &data, cfg.quad_points);
        if (E.front() > 0.0) row.energy_loss_fraction = (E.front() - E.back()) / E.front();
        if (!cfg.out_dir.empty() && k + 1 == cfg.hs.size()) write_snapshots(cfg, r.solution, space, p);
      }
      if (log)
        *log << to_string(space) << " p=" << p << " h=" << h << " ndof=" << row.ndof << ' '
             << row.status << " (" << std::fixed << std::setprecision(2) << row.solve_seconds
             << " s)" << std::defaultfloat << std::setprecision(6) << '\n';
      rows.push_back(row);
    }
  }
  fill_rates(rows);
  return rows;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows, bool space_column) {
  auto num = [&](double v) {
    if (std::isfinite(v)) os << v;
  };
  if (space_column) os << "space,";
  os << "h,p,ndof,dg_error,dg_rate,ft_error,ft_rate,solve_seconds,cond_estimate,"
        "energy_loss_fraction,status\n";
  os << std::setprecision(10);
  for (const auto& r : rows) {
    if (space_column) os << to_string(r.space) << ',';
    num(r.h);
    os << ',' << r.p << ',' << r.ndof << ',';
    num(r.dg_error);
    os << ',';
    num(r.dg_rate);
    os << ',';
    num(r.ft_error);
    os << ',';
    num(r.ft_rate);
    os << ',';
    num(r.solve_seconds);
    os << ',';
    num(r.cond_estimate);
    os << ',';
    num(r.energy_loss_fraction);
    std::string status = r.status;
    for (char& ch : status)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    os << ',' << status << '\n';
  }
}

}  // namespace qtdg
