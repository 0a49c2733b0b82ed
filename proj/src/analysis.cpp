#include "qtdg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qtdg {

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Traces {
  Vec w;
  std::array<Vec, 2> tau;
};

/// discrete - exact at the points (exact may be null).
Traces error_traces(const DiscreteSolution& sol, int e, const std::vector<QuadPoint>& q,
                    const ExactSolution* exact) {
  Traces T;
  sol.values(e, q, T.w, T.tau);
  if (exact)
    for (std::size_t i = 0; i < q.size(); ++i) {
      T.w(i) -= exact->v(q[i].p);
      const SpacePoint s = exact->sigma(q[i].p);
      T.tau[0](i) -= s[0];
      T.tau[1](i) -= s[1];
    }
  return T;
}

double ntau(const Traces& T, int i, const SpacePoint& nx) {
  return T.tau[0](i) * nx[0] + T.tau[1](i) * nx[1];
}

double tau2(const Traces& T, int i) { return T.tau[0](i) * T.tau[0](i) + T.tau[1](i) * T.tau[1](i); }

double safe_inv(double a) { return a > 0.0 ? 1.0 / a : kInf; }

int default_npts(const DiscreteSolution& sol, int quad_points) {
  return quad_points > 0 ? quad_points : sol.space().p + 3;
}

STPoint at(double x, double t) { return STPoint{{x, 0.0}, t}; }

/// Breakpoints of the 1D slice at time t.
std::vector<double> breakpoints_1d(const SpaceTimeMesh& mesh, double t) {
  std::vector<double> xs{mesh.lo[0], mesh.hi[0]};
  if (mesh.kind == "cartesian") {
    for (int i = 1; i < mesh.grid[0]; ++i)
      xs.push_back(mesh.lo[0] + (mesh.hi[0] - mesh.lo[0]) * i / mesh.grid[0]);
  } else {
    for (const auto& K : mesh.elements) {
      const std::size_t m = K.vertices.size();
      for (std::size_t a = 0; a < m; ++a) {
        const STPoint& p = K.vertices[a];
        const STPoint& r = K.vertices[(a + 1) % m];
        const double t0 = std::min(p.t, r.t), t1 = std::max(p.t, r.t);
        if (t < t0 || t > t1) continue;
        if (t1 == t0) {
          xs.push_back(p.x[0]);
          xs.push_back(r.x[0]);
        } else {
          const double s = (t - p.t) / (r.t - p.t);
          xs.push_back(p.x[0] + s * (r.x[0] - p.x[0]));
        }
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  const double tol = 1e-13 * (mesh.hi[0] - mesh.lo[0]);
  std::vector<double> out;
  for (double x : xs) {
    if (x < mesh.lo[0] || x > mesh.hi[0]) continue;
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

std::vector<SliceCell> cells_from_breakpoints(const DiscreteSolution& sol,
                                              const std::vector<double>& xs, double t, int npts) {
  std::vector<SliceCell> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    SliceCell c;
    c.element = sol.locate(at(0.5 * (xs[i] + xs[i + 1]), t));
    if (c.element < 0) throw std::logic_error("slice point outside the mesh");
    segment_rule(at(xs[i], t), at(xs[i + 1], t), npts, c.points);
    out.push_back(std::move(c));
  }
  return out;
}

double weighted_sq(const CoefficientField& coeff, const std::vector<QuadPoint>& q, const Vec& w,
                   const std::array<Vec, 2>& s, int n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const SpacePoint& x = q[i].p.x;
    double t2 = s[0](i) * s[0](i);
    if (n == 2) t2 += s[1](i) * s[1](i);
    sum += q[i].w * (coeff.G(x) * w(i) * w(i) + coeff.rho(x) * t2);
  }
  return sum;
}

}  // namespace

DGNormTerms dg_norm_terms(const DiscreteSolution& sol, const ExactSolution* exact,
                          const DGParameters& P, bool plus, int quad_points) {
  const auto& mesh = sol.mesh();
  const auto& c = sol.coeff();
  const int npts = default_npts(sol, quad_points);
  DGNormTerms R;
  for (const auto& F : mesh.faces) {
    const auto q = face_quadrature(mesh, F, npts);
    const int m = static_cast<int>(q.size());
    switch (F.kind) {
      case FaceKind::SpaceLike: {
        const Traces A = error_traces(sol, F.before, q, exact);
        const Traces B = error_traces(sol, F.after, q, exact);
        const double jw = 0.5 * (1.0 - F.gamma) * F.nt;
        const double pw = F.gamma < 1.0 ? 2.0 * F.nt / (1.0 - F.gamma) : kInf;
        for (int i = 0; i < m; ++i) {
          const SpacePoint& x = q[i].p.x;
          const double dw = A.w(i) - B.w(i);
          const double d0 = A.tau[0](i) - B.tau[0](i), d1 = A.tau[1](i) - B.tau[1](i);
          R.space_jump += q[i].w * jw * (c.G(x) * dw * dw + c.rho(x) * (d0 * d0 + d1 * d1));
          if (plus) R.plus_space += q[i].w * pw * (c.G(x) * A.w(i) * A.w(i) + c.rho(x) * tau2(A, i));
        }
        break;
      }
      case FaceKind::Initial:
      case FaceKind::Final: {
        const Traces A = error_traces(sol, F.kind == FaceKind::Initial ? F.after : F.before, q, exact);
        for (int i = 0; i < m; ++i) {
          const SpacePoint& x = q[i].p.x;
          R.initial_final += q[i].w * 0.5 * (c.G(x) * A.w(i) * A.w(i) + c.rho(x) * tau2(A, i));
        }
        break;
      }
      case FaceKind::TimeLike: {
        const Traces A = error_traces(sol, F.before, q, exact);
        const Traces B = error_traces(sol, F.after, q, exact);
        for (int i = 0; i < m; ++i) {
          const SpacePoint& x = q[i].p.x;
          const double a = P.alpha_at(c, x), b = P.beta_at(c, x);
          const double dw = A.w(i) - B.w(i);
          const double dn = ntau(A, i, F.nx) - ntau(B, i, F.nx);
          R.time_jump += q[i].w * (a * dw * dw + b * dn * dn);
          if (plus) {
            const double mw = 0.5 * (A.w(i) + B.w(i));
            const double m0 = 0.5 * (A.tau[0](i) + B.tau[0](i)), m1 = 0.5 * (A.tau[1](i) + B.tau[1](i));
            R.plus_time += q[i].w * (safe_inv(b) * mw * mw + safe_inv(a) * (m0 * m0 + m1 * m1));
          }
        }
        break;
      }
      case FaceKind::Dirichlet:
      case FaceKind::Neumann:
      case FaceKind::Robin: {
        const Traces A = error_traces(sol, F.before, q, exact);
        for (int i = 0; i < m; ++i) {
          const SpacePoint& x = q[i].p.x;
          const double w2 = A.w(i) * A.w(i);
          const double tn = ntau(A, i, F.nx);
          if (F.kind == FaceKind::Dirichlet) {
            const double a = P.alpha_at(c, x);
            R.dirichlet += q[i].w * a * w2;
            if (plus) R.plus_boundary += q[i].w * safe_inv(a) * tn * tn;
          } else if (F.kind == FaceKind::Neumann) {
            const double b = P.beta_at(c, x);
            R.neumann += q[i].w * b * tn * tn;
            if (plus) R.plus_boundary += q[i].w * safe_inv(b) * w2;
          } else {
            const double d = P.delta_at(c, x), th = P.theta_at(c, x);
            R.robin += q[i].w * ((1.0 - d) * th * w2 + d / th * tn * tn);
          }
        }
        break;
      }
    }
  }
  const int n = mesh.n;
  for (const auto& K : mesh.elements) {
    const double m1 = P.mu1_K.at(K.id), m2 = P.mu2_K.at(K.id);
    if (m1 == 0.0 && m2 == 0.0 && !plus) continue;
    const auto q = element_quadrature(mesh, K, npts);
    const BasisValues V = sol.basis_values(K.id, q, true);
    const Vec xe = sol.local(K.id);
    const Vec divtau = V.divtau * xe, dtw = V.dtw * xe;
    std::array<Vec, 2> dxw, dtt;
    for (int k = 0; k < n; ++k) {
      dxw[k] = V.dxw[k] * xe;
      dtt[k] = V.dttau[k] * xe;
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      const SpacePoint& x = q[i].p.x;
      const double G = c.G(x), rho = c.rho(x);
      const double r1 = divtau(i) + G * dtw(i);
      double r2s = 0.0;
      for (int k = 0; k < n; ++k) {
        const double v = dxw[k](i) + rho * dtt[k](i);
        r2s += v * v;
      }
      R.volume += q[i].w * (m1 / G * r1 * r1 + m2 / rho * r2s);
    }
    if (plus) {
      const Traces A = error_traces(sol, K.id, q, exact);
      for (std::size_t i = 0; i < q.size(); ++i) {
        const SpacePoint& x = q[i].p.x;
        R.plus_volume += q[i].w * (safe_inv(m1) * c.G(x) * A.w(i) * A.w(i) +
                                   safe_inv(m2) * c.rho(x) * tau2(A, static_cast<int>(i)));
      }
    }
  }
  return R;
}

double dg_norm_error(const DiscreteSolution& sol, const ExactSolution& exact,
                     const DGParameters& params, int quad_points) {
  return std::sqrt(dg_norm_terms(sol, &exact, params, false, quad_points).dg_squared());
}

double dg_plus_norm_error(const DiscreteSolution& sol, const ExactSolution& exact,
                          const DGParameters& params, int quad_points) {
  return std::sqrt(dg_norm_terms(sol, &exact, params, true, quad_points).dg_plus_squared());
}

double dg_norm(const DiscreteSolution& sol, const DGParameters& params, int quad_points) {
  return std::sqrt(dg_norm_terms(sol, nullptr, params, false, quad_points).dg_squared());
}

std::vector<SliceCell> slice_quadrature(const DiscreteSolution& sol, double t, int npts) {
  const auto& mesh = sol.mesh();
  if (mesh.n == 1) return cells_from_breakpoints(sol, breakpoints_1d(mesh, t), t, npts);
  if (mesh.kind != "prism") throw std::invalid_argument("slices in 2+1D need a prism mesh");
  const int nt = mesh.grid[2];
  const int ntri = 2 * mesh.grid[0] * mesh.grid[1];
  const int s = std::clamp(static_cast<int>(std::ceil(t / mesh.T * nt)) - 1, 0, nt - 1);
  std::vector<SliceCell> out;
  for (int k = 0; k < ntri; ++k) {
    SliceCell c;
    c.element = s * ntri + k;
    const auto& v = mesh.elements[c.element].vertices;
    STPoint a = v[0], b = v[1], d = v[2];
    a.t = b.t = d.t = t;
    triangle_rule_space(a, b, d, npts, c.points);
    out.push_back(std::move(c));
  }
  return out;
}

double final_time_error(const DiscreteSolution& sol, const ExactSolution& exact, int quad_points) {
  const double T = sol.mesh().T;
  double sum = 0.0;
  for (const auto& c : slice_quadrature(sol, T, default_npts(sol, quad_points))) {
    const Traces E = error_traces(sol, c.element, c.points, &exact);
    sum += weighted_sq(sol.coeff(), c.points, E.w, E.tau, sol.mesh().n);
  }
  return std::sqrt(sum);
}

double final_time_difference(const DiscreteSolution& a, const DiscreteSolution& b, int quad_points) {
  const auto& ma = a.mesh();
  const double T = ma.T;
  const int npts = std::max(default_npts(a, quad_points), default_npts(b, quad_points));
  double sum = 0.0;
  auto accumulate = [&](const std::vector<QuadPoint>& q, int ea, int eb) {
    Vec va, vb;
    std::array<Vec, 2> sa, sb;
    a.values(ea, q, va, sa);
    b.values(eb, q, vb, sb);
    const std::array<Vec, 2> ds{sa[0] - sb[0], sa[1] - sb[1]};
    sum += weighted_sq(a.coeff(), q, va - vb, ds, ma.n);
  };
  if (ma.n == 1) {
    std::vector<double> xs = breakpoints_1d(ma, T);
    const auto xb = breakpoints_1d(b.mesh(), T);
    xs.insert(xs.end(), xb.begin(), xb.end());
    std::sort(xs.begin(), xs.end());
    std::vector<double> u;
    for (double x : xs)
      if (u.empty() || x - u.back() > 1e-13 * (ma.hi[0] - ma.lo[0])) u.push_back(x);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      const STPoint mid = at(0.5 * (u[i] + u[i + 1]), T);
      std::vector<QuadPoint> q;
      segment_rule(at(u[i], T), at(u[i + 1], T), npts, q);
      accumulate(q, a.locate(mid), b.locate(mid));
    }
  } else {
    for (const auto& c : slice_quadrature(a, T, npts))
      for (const auto& qp : c.points) {
        const int eb = b.locate(qp.p);
        accumulate({qp}, c.element, eb);
      }
  }
  return std::sqrt(sum);
}

double energy_at_time(const DiscreteSolution& sol, double t, int quad_points) {
  double sum = 0.0;
  for (const auto& c : slice_quadrature(sol, t, default_npts(sol, quad_points))) {
    Vec v;
    std::array<Vec, 2> s;
    sol.values(c.element, c.points, v, s);
    sum += weighted_sq(sol.coeff(), c.points, v, s, sol.mesh().n);
  }
  return 0.5 * sum;
}

std::vector<double> front_energies(const DiscreteSolution& sol, const BoundaryData* initial,
                                   int quad_points) {
  const auto& mesh = sol.mesh();
  const auto& c = sol.coeff();
  const int npts = default_npts(sol, quad_points);
  const int L = static_cast<int>(mesh.layers.size());
  // diff[j] accumulates contributions starting at front j, removed at the end index
  std::vector<double> diff(L + 2, 0.0);
  auto flux = [&](const Face& F, int e) {
    const auto q = face_quadrature(mesh, F, npts);
    Vec w;
    std::array<Vec, 2> s;
    sol.values(e, q, w, s);
    double sum = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const SpacePoint& x = q[i].p.x;
      const double tn = s[0](i) * F.nx[0] + s[1](i) * F.nx[1];
      const double t2 = s[0](i) * s[0](i) + s[1](i) * s[1](i);
      sum += q[i].w * (w(i) * tn + 0.5 * (c.G(x) * w(i) * w(i) + c.rho(x) * t2) * F.nt);
    }
    return sum;
  };
  for (const auto& F : mesh.faces) {
    if (F.kind == FaceKind::SpaceLike) {
      const int lb = mesh.elements[F.before].layer, la = mesh.elements[F.after].layer;
      const double E = flux(F, F.before);
      diff[lb + 1] += E;
      diff[la + 1] -= E;
    } else if (F.kind == FaceKind::Final) {
      diff[mesh.elements[F.before].layer + 1] += flux(F, F.before);
    } else if (F.kind == FaceKind::Initial) {
      double E = 0.0;
      if (initial && initial->v0 && initial->sigma0) {
        const auto q = face_quadrature(mesh, F, npts);
        for (const auto& qp : q) {
          const SpacePoint& x = qp.p.x;
          const double v = initial->v0(qp.p);
          const SpacePoint s = initial->sigma0(qp.p);
          E += qp.w * 0.5 * (c.G(x) * v * v + c.rho(x) * (s[0] * s[0] + s[1] * s[1]));
        }
      } else {
        E = flux(F, F.after);
      }
      diff[0] += E;
      // initial faces leave the front once their element is solved
      diff[mesh.elements[F.after].layer + 1] -= E;
    }
  }
  std::vector<double> out(L + 1);
  double run = 0.0;
  for (int j = 0; j <= L; ++j) {
    run += diff[j];
    out[j] = run;
  }
  return out;
}

double exact_energy_at_time(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                            const ExactSolution& exact, double t, int npts) {
  double sum = 0.0;
  auto add = [&](const std::vector<QuadPoint>& q) {
    for (const auto& qp : q) {
      const double v = exact.v(qp.p);
      const SpacePoint s = exact.sigma(qp.p);
      double t2 = s[0] * s[0];
      if (mesh.n == 2) t2 += s[1] * s[1];
      sum += qp.w * 0.5 * (coeff.G(qp.p.x) * v * v + coeff.rho(qp.p.x) * t2);
    }
  };
  const int m = 64;
  if (mesh.n == 1) {
    for (int i = 0; i < m; ++i) {
      std::vector<QuadPoint> q;
      const double a = mesh.lo[0] + (mesh.hi[0] - mesh.lo[0]) * i / m;
      const double b = mesh.lo[0] + (mesh.hi[0] - mesh.lo[0]) * (i + 1) / m;
      segment_rule(at(a, t), at(b, t), npts, q);
      add(q);
    }
  } else {
    const int m2 = 32;
    std::vector<double> gx, gw;
    gauss_legendre(npts, gx, gw);
    const double dx = (mesh.hi[0] - mesh.lo[0]) / m2, dy = (mesh.hi[1] - mesh.lo[1]) / m2;
    for (int i = 0; i < m2; ++i)
      for (int j = 0; j < m2; ++j) {
        std::vector<QuadPoint> q;
        for (int a = 0; a < npts; ++a)
          for (int b = 0; b < npts; ++b)
            q.push_back({STPoint{{mesh.lo[0] + (i + gx[a]) * dx, mesh.lo[1] + (j + gx[b]) * dy}, t},
                         gw[a] * gw[b] * dx * dy});
        add(q);
      }
  }
  return sum;
}

std::vector<double> eoc(const std::vector<double>& errors, const std::vector<double>& hs) {
  if (errors.size() != hs.size() || errors.size() < 2)
    throw std::invalid_argument("eoc needs two or more errors and matching mesh sizes");
  for (double e : errors)
    if (!(e > 0.0)) throw std::invalid_argument("eoc needs positive errors");
  std::vector<double> r;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (!(hs[k] < hs[k - 1])) throw std::invalid_argument("mesh sizes must decrease");
    r.push_back(std::log(errors[k - 1] / errors[k]) / std::log(hs[k - 1] / hs[k]));
  }
  return r;
}

std::vector<ElementQuality> mesh_quality(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                                         const DGParameters& P) {
  std::vector<ElementQuality> out;
  out.reserve(mesh.elements.size());
  for (const auto& K : mesh.elements) {
    double a_td = 0.0, b_tn = 0.0, c_tn = 0.0, d_td = 0.0, r1 = 0.0, r2 = 0.0, xs = 0.0;
    double space = 0.0, time = 0.0;
    for (int f : K.faces) {
      const Face& F = mesh.faces[f];
      if (F.nt > 0.0) {
        space += F.measure;
        const double g = F.kind == FaceKind::SpaceLike ? F.gamma : 0.0;
        xs = std::max(xs, g < 1.0 ? F.nt * (2.0 / (1.0 - g) + 1.0) : kInf);
        continue;
      }
      time += F.measure;
      const bool tl = F.kind == FaceKind::TimeLike;
      for (const auto& v : F.vertices) {
        const SpacePoint& x = v.x;
        const double cc = wavespeed(coeff, x), rho = coeff.rho(x);
        const double a = P.alpha_at(coeff, x), b = P.beta_at(coeff, x);
        if (tl || F.kind == FaceKind::Dirichlet) {
          a_td = std::max(a_td, 2.0 * cc * rho * a);
          d_td = std::max(d_td, safe_inv(cc * rho * a));
        }
        if (tl || F.kind == FaceKind::Neumann) {
          b_tn = std::max(b_tn, cc * rho * safe_inv(b));
          c_tn = std::max(c_tn, 2.0 * b / (cc * rho));
        }
        if (F.kind == FaceKind::Robin) {
          const double d = P.delta_at(coeff, x), th = P.theta_at(coeff, x);
          r1 = std::max(r1, (1.0 - d) * cc * th);
          r2 = std::max(r2, d / (cc * th));
        }
      }
    }
    ElementQuality Q;
    Q.xi_time = std::max({a_td + b_tn, c_tn + d_td, r1, r2});
    Q.xi_space = xs;
    Q.xi = std::max(Q.xi_time, Q.xi_space);
    Q.eta = K.r_Kc * (space / K.sup_c + time) / K.volume;
    out.push_back(Q);
  }
  return out;
}

void export_snapshot(std::ostream& os, const DiscreteSolution& sol, double t, int nx, int ny,
                     const std::string& format) {
  const auto& mesh = sol.mesh();
  if (nx < 2 || (mesh.n == 2 && ny < 2)) throw std::invalid_argument("snapshot grid too small");
  if (mesh.n == 1) ny = 1;
  auto coord = [&](int k, int i, int m) {
    return m == 1 ? mesh.lo[k] : mesh.lo[k] + (mesh.hi[k] - mesh.lo[k]) * i / (m - 1);
  };
  std::vector<STPoint> pts;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      pts.push_back(STPoint{{coord(0, i, nx), mesh.n == 2 ? coord(1, j, ny) : 0.0}, t});
  std::vector<FieldValue> vals;
  for (const auto& p : pts) vals.push_back(sol.eval(p));
  os.precision(12);
  if (format == "csv") {
    os << "x1,x2,t,v,sigma1,sigma2\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << pts[i].x[0] << ',' << pts[i].x[1] << ',' << t << ',' << vals[i].v << ','
         << vals[i].sigma[0] << ',' << vals[i].sigma[1] << '\n';
  } else if (format == "vtk") {
    os << "# vtk DataFile Version 3.0\nqtdg snapshot t=" << t << "\nASCII\nDATASET STRUCTURED_POINTS\n";
    os << "DIMENSIONS " << nx << ' ' << ny << " 1\n";
    os << "ORIGIN " << mesh.lo[0] << ' ' << (mesh.n == 2 ? mesh.lo[1] : 0.0) << " 0\n";
    os << "SPACING " << (mesh.hi[0] - mesh.lo[0]) / (nx - 1) << ' '
       << (mesh.n == 2 ? (mesh.hi[1] - mesh.lo[1]) / (ny - 1) : 1.0) << " 1\n";
    os << "POINT_DATA " << pts.size() << "\nSCALARS v double 1\nLOOKUP_TABLE default\n";
    for (const auto& v : vals) os << v.v << '\n';
    os << "VECTORS sigma double\n";
    for (const auto& v : vals) os << v.sigma[0] << ' ' << v.sigma[1] << " 0\n";
  } else {
    throw std::invalid_argument("unknown snapshot format: " + format);
  }
}

}  // namespace qtdg
