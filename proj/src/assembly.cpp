#include "qtdg/assembly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qtdg {

std::string to_string(const ParamRule& r) {
  switch (r.kind) {
    case ParamRule::Zero: return "zero";
    case ParamRule::Default: return "default";
    case ParamRule::Constant: {
      std::ostringstream os;
      os << r.value;
      return os.str();
    }
  }
  return "?";
}

ParamRule parse_param_rule(const std::string& s) {
  if (s == "zero" || s == "0") return ParamRule::zero();
  if (s == "default" || s == "paper-default") return ParamRule::standard();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad parameter value: " + s);
  }
  if (used != s.size()) throw std::invalid_argument("bad parameter value: " + s);
  return v == 0.0 ? ParamRule::zero() : ParamRule::constant(v);
}

namespace {

double apply(const ParamRule& r, double standard) {
  switch (r.kind) {
    case ParamRule::Zero: return 0.0;
    case ParamRule::Default: return standard;
    case ParamRule::Constant: return r.value;
  }
  return standard;
}

}  // namespace

double DGParameters::alpha_at(const CoefficientField& c, const SpacePoint& x) const {
  if (alpha.kind != ParamRule::Default) return apply(alpha, 0.0);
  return std::sqrt(c.G(x) / c.rho(x));
}

double DGParameters::beta_at(const CoefficientField& c, const SpacePoint& x) const {
  if (beta.kind != ParamRule::Default) return apply(beta, 0.0);
  return std::sqrt(c.rho(x) / c.G(x));
}

double DGParameters::theta_at(const CoefficientField& c, const SpacePoint& x) const {
  if (theta.kind != ParamRule::Default) return apply(theta, 0.0);
  return std::sqrt(c.G(x) / c.rho(x));
}

double DGParameters::delta_at(const CoefficientField& c, const SpacePoint& x) const {
  if (delta.kind != ParamRule::Default) return apply(delta, 0.0);
  const double cs = wavespeed(c, x), th = theta_at(c, x);
  const double q = cs * cs * th * th;
  return q / (1.0 + q);
}

bool DGParameters::zero_warning() const {
  auto nonpositive = [](const ParamRule& r) {
    return r.kind == ParamRule::Zero || (r.kind == ParamRule::Constant && !(r.value > 0));
  };
  return nonpositive(alpha) || nonpositive(beta) || nonpositive(mu1) || nonpositive(mu2);
}

DGParameters make_parameters(const SpaceTimeMesh& mesh, const CoefficientField& coeff,
                             ParamRule alpha, ParamRule beta, ParamRule mu1, ParamRule mu2,
                             ParamRule delta, ParamRule theta) {
  (void)coeff;
  DGParameters P;
  P.alpha = alpha;
  P.beta = beta;
  P.mu1 = mu1;
  P.mu2 = mu2;
  P.delta = delta;
  P.theta = theta;
  const bool all_default = alpha.kind == ParamRule::Default && beta.kind == ParamRule::Default &&
                           mu1.kind == ParamRule::Default && mu2.kind == ParamRule::Default;
  const bool all_zero = alpha.kind == ParamRule::Zero && beta.kind == ParamRule::Zero &&
                        mu1.kind == ParamRule::Zero && mu2.kind == ParamRule::Zero;
  P.policy = all_default ? "paper-default" : all_zero ? "zero" : "custom";
  for (const auto& K : mesh.elements) {
    const double m = K.r_Kc / K.sup_c;
    P.mu1_K.push_back(apply(mu1, m));
    P.mu2_K.push_back(apply(mu2, m));
  }
  if (delta.kind == ParamRule::Constant && !(delta.value > 0 && delta.value < 1))
    throw std::invalid_argument("delta must lie in (0,1)");
  return P;
}

DGParameters default_parameters(const SpaceTimeMesh& mesh, const CoefficientField& coeff) {
  return make_parameters(mesh, coeff, ParamRule::standard(), ParamRule::standard(),
                         ParamRule::standard(), ParamRule::standard());
}

DGParameters zero_parameters(const SpaceTimeMesh& mesh, const CoefficientField& coeff) {
  return make_parameters(mesh, coeff, ParamRule::zero(), ParamRule::zero(), ParamRule::zero(),
                         ParamRule::zero());
}

BoundaryData BoundaryData::homogeneous() {
  BoundaryData d;
  d.v0 = [](const STPoint&) { return 0.0; };
  d.sigma0 = [](const STPoint&) { return SpacePoint{0.0, 0.0}; };
  d.gD = d.gN = d.gR = [](const STPoint&) { return 0.0; };
  return d;
}

namespace {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

BasisValues values(const AssemblyContext& ctx, int e, const std::vector<QuadPoint>& q, bool d) {
  return evaluate_basis(*ctx.space.local[e], ctx.space.centers[e], q, ctx.coeff, d);
}

Vec weights(const std::vector<QuadPoint>& q) {
  Vec w(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) w(i) = q[i].w;
  return w;
}

Mat normal_trace(const BasisValues& V, const SpacePoint& nx, int n) {
  Mat r = V.tau[0] * nx[0];
  if (n == 2) r += V.tau[1] * nx[1];
  return r;
}

Vec sample(const std::vector<QuadPoint>& q, const std::function<double(const SpacePoint&)>& f) {
  Vec v(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) v(i) = f(q[i].p.x);
  return v;
}

Vec sample_st(const std::vector<QuadPoint>& q, const ScalarData& f) {
  Vec v(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) v(i) = f ? f(q[i].p) : 0.0;
  return v;
}

void boundary_terms(const AssemblyContext& ctx, const Face& F, bool matrix, FaceMatrices& out) {
  const int n = ctx.mesh.n;
  const auto q = face_quadrature(ctx.mesh, F, ctx.npts());
  const int e = F.before;
  const BasisValues V = values(ctx, e, q, false);
  const Vec D = weights(q);
  const Mat TN = normal_trace(V, F.nx, n);
  const auto& P = ctx.params;
  const auto& c = ctx.coeff;
  const int d = ctx.space.dim(e);
  out.element = {e, -1};
  Mat& M = out.M[0][0];
  Vec& r = out.rhs[0];
  if (matrix) M = Mat::Zero(d, d);
  r = Vec::Zero(d);
  switch (F.kind) {
    case FaceKind::Dirichlet: {
      const Vec a = sample(q, [&](const SpacePoint& x) { return P.alpha_at(c, x); });
      const Vec g = sample_st(q, ctx.data.gD);
      if (matrix) M = V.w.transpose() * D.asDiagonal() * TN + V.w.transpose() * (D.cwiseProduct(a)).asDiagonal() * V.w;
      r = V.w.transpose() * D.cwiseProduct(a).cwiseProduct(g) - TN.transpose() * D.cwiseProduct(g);
      break;
    }
    case FaceKind::Neumann: {
      const Vec b = sample(q, [&](const SpacePoint& x) { return P.beta_at(c, x); });
      const Vec g = sample_st(q, ctx.data.gN);
      if (matrix) M = TN.transpose() * D.asDiagonal() * V.w + TN.transpose() * (D.cwiseProduct(b)).asDiagonal() * TN;
      r = TN.transpose() * D.cwiseProduct(b).cwiseProduct(g) - V.w.transpose() * D.cwiseProduct(g);
      break;
    }
    case FaceKind::Robin: {
      const Vec dl = sample(q, [&](const SpacePoint& x) { return P.delta_at(c, x); });
      const Vec th = sample(q, [&](const SpacePoint& x) { return P.theta_at(c, x); });
      const Vec g = sample_st(q, ctx.data.gR);
      const Vec one_m = (Vec::Ones(q.size()) - dl).cwiseProduct(D);
      const Vec dd = dl.cwiseProduct(D);
      if (matrix)
        M = V.w.transpose() * one_m.cwiseProduct(th).asDiagonal() * V.w +
            TN.transpose() * one_m.asDiagonal() * V.w + V.w.transpose() * dd.asDiagonal() * TN +
            TN.transpose() * dd.cwiseQuotient(th).asDiagonal() * TN;
      r = V.w.transpose() * one_m.cwiseProduct(g) - TN.transpose() * dd.cwiseQuotient(th).cwiseProduct(g);
      break;
    }
    default: throw std::logic_error("not a boundary face");
  }
}

}  // namespace

Mat volume_matrix(const AssemblyContext& ctx, int e) {
  const int n = ctx.mesh.n;
  const auto& K = ctx.mesh.elements[e];
  const auto q = element_quadrature(ctx.mesh, K, ctx.npts());
  const BasisValues V = values(ctx, e, q, true);
  const Vec D = weights(q);
  const Vec G = sample(q, [&](const SpacePoint& x) { return ctx.coeff.G(x); });
  const Vec R = sample(q, [&](const SpacePoint& x) { return ctx.coeff.rho(x); });
  const Mat R1 = V.divtau + G.asDiagonal() * V.dtw;
  Mat A = -(R1.transpose() * D.asDiagonal() * V.w);
  std::array<Mat, 2> R2;
  for (int k = 0; k < n; ++k) {
    R2[k] = V.dxw[k] + R.asDiagonal() * V.dttau[k];
    A -= R2[k].transpose() * D.asDiagonal() * V.tau[k];
  }
  const double m1 = ctx.params.mu1_K.at(e), m2 = ctx.params.mu2_K.at(e);
  if (m1 != 0.0) A += m1 * (R1.transpose() * D.cwiseQuotient(G).asDiagonal() * R1);
  if (m2 != 0.0)
    for (int k = 0; k < n; ++k) A += m2 * (R2[k].transpose() * D.cwiseQuotient(R).asDiagonal() * R2[k]);
  return A;
}

FaceMatrices face_matrices(const AssemblyContext& ctx, int f) {
  const Face& F = ctx.mesh.faces[f];
  const int n = ctx.mesh.n;
  FaceMatrices out;
  out.element = {F.before, F.after};
  switch (F.kind) {
    case FaceKind::Initial:
      return face_rhs(ctx, f);
    case FaceKind::Dirichlet:
    case FaceKind::Neumann:
    case FaceKind::Robin:
      boundary_terms(ctx, F, true, out);
      return out;
    case FaceKind::Final: {
      const auto q = face_quadrature(ctx.mesh, F, ctx.npts());
      const BasisValues V = values(ctx, F.before, q, false);
      const Vec D = weights(q);
      const Vec G = sample(q, [&](const SpacePoint& x) { return ctx.coeff.G(x); });
      const Vec R = sample(q, [&](const SpacePoint& x) { return ctx.coeff.rho(x); });
      Mat M = V.w.transpose() * D.cwiseProduct(G).asDiagonal() * V.w;
      for (int k = 0; k < n; ++k) M += V.tau[k].transpose() * D.cwiseProduct(R).asDiagonal() * V.tau[k];
      out.M[0][0] = M * F.nt;
      out.element = {F.before, -1};
      return out;
    }
    case FaceKind::SpaceLike: {
      const auto q = face_quadrature(ctx.mesh, F, ctx.npts());
      const Vec D = weights(q);
      const Vec G = sample(q, [&](const SpacePoint& x) { return ctx.coeff.G(x); });
      const Vec R = sample(q, [&](const SpacePoint& x) { return ctx.coeff.rho(x); });
      const BasisValues Vm = values(ctx, F.before, q, false);
      const BasisValues Vp = values(ctx, F.after, q, false);
      // fluxes of the upwind trial trace
      const Mat SN = normal_trace(Vm, F.nx, n);
      const Mat Fw = D.cwiseProduct(G * F.nt).asDiagonal() * Vm.w + D.asDiagonal() * SN;
      std::array<Mat, 2> Ft;
      for (int k = 0; k < n; ++k)
        Ft[k] = D.cwiseProduct(R * F.nt).asDiagonal() * Vm.tau[k] + (D * F.nx[k]).asDiagonal() * Vm.w;
      auto block = [&](const BasisValues& T) {
        Mat M = T.w.transpose() * Fw;
        for (int k = 0; k < n; ++k) M += T.tau[k].transpose() * Ft[k];
        return M;
      };
      out.M[0][0] = block(Vm);
      out.M[1][0] = -block(Vp);
      return out;
    }
    case FaceKind::TimeLike: {
      const auto q = face_quadrature(ctx.mesh, F, ctx.npts());
      const Vec D = weights(q);
      const Vec a = sample(q, [&](const SpacePoint& x) { return ctx.params.alpha_at(ctx.coeff, x); });
      const Vec b = sample(q, [&](const SpacePoint& x) { return ctx.params.beta_at(ctx.coeff, x); });
      const BasisValues V[2] = {values(ctx, F.before, q, false), values(ctx, F.after, q, false)};
      const Mat TN[2] = {normal_trace(V[0], F.nx, n), normal_trace(V[1], F.nx, n)};
      const double s[2] = {1.0, -1.0};
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B)
          out.M[A][B] = s[A] * 0.5 * (TN[A].transpose() * D.asDiagonal() * V[B].w +
                                      V[A].w.transpose() * D.asDiagonal() * TN[B]) +
                        s[A] * s[B] * (V[A].w.transpose() * D.cwiseProduct(a).asDiagonal() * V[B].w +
                                       TN[A].transpose() * D.cwiseProduct(b).asDiagonal() * TN[B]);
      return out;
    }
  }
  return out;
}

FaceMatrices face_rhs(const AssemblyContext& ctx, int f) {
  const Face& F = ctx.mesh.faces[f];
  const int n = ctx.mesh.n;
  FaceMatrices out;
  out.element = {F.before, F.after};
  if (F.kind == FaceKind::Initial) {
    const auto q = face_quadrature(ctx.mesh, F, ctx.npts());
    const BasisValues V = values(ctx, F.after, q, false);
    const Vec D = weights(q);
    Vec gv(q.size());
    std::array<Vec, 2> rs;
    for (int k = 0; k < n; ++k) rs[k].resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const SpacePoint& x = q[i].p.x;
      gv(i) = D(i) * ctx.coeff.G(x) * (ctx.data.v0 ? ctx.data.v0(q[i].p) : 0.0);
      const SpacePoint s0 = ctx.data.sigma0 ? ctx.data.sigma0(q[i].p) : SpacePoint{0.0, 0.0};
      const double r = ctx.coeff.rho(x);
      for (int k = 0; k < n; ++k) rs[k](i) = D(i) * r * s0[k];
    }
    Vec r = V.w.transpose() * gv;
    for (int k = 0; k < n; ++k) r += V.tau[k].transpose() * rs[k];
    out.rhs[1] = r * F.nt;
    out.element = {-1, F.after};
  } else if (F.is_boundary()) {
    boundary_terms(ctx, F, false, out);
  }
  return out;
}

Eigen::SparseMatrix<double> assemble_global(const AssemblyContext& ctx, Vec& rhs) {
  const auto& S = ctx.space;
  std::vector<Eigen::Triplet<double>> trip;
  rhs = Vec::Zero(S.ndof);
  auto add = [&](int ea, int eb, const Mat& M) {
    const int oa = S.offset[ea], ob = S.offset[eb];
    for (int j = 0; j < M.cols(); ++j)
      for (int i = 0; i < M.rows(); ++i)
        if (M(i, j) != 0.0) trip.emplace_back(oa + i, ob + j, M(i, j));
  };
  for (int e = 0; e < static_cast<int>(ctx.mesh.elements.size()); ++e) add(e, e, volume_matrix(ctx, e));
  for (int f = 0; f < static_cast<int>(ctx.mesh.faces.size()); ++f) {
    const FaceMatrices fm = face_matrices(ctx, f);
    for (int a = 0; a < 2; ++a) {
      if (fm.element[a] < 0) continue;
      for (int b = 0; b < 2; ++b)
        if (fm.element[b] >= 0 && fm.M[a][b].size() > 0) add(fm.element[a], fm.element[b], fm.M[a][b]);
      if (fm.rhs[a].size() > 0) rhs.segment(S.offset[fm.element[a]], fm.rhs[a].size()) += fm.rhs[a];
    }
  }
  Eigen::SparseMatrix<double> A(S.ndof, S.ndof);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

double bilinear_form(const AssemblyContext& ctx, const Vec& x, const Vec& y) {
  Vec rhs;
  const auto A = assemble_global(ctx, rhs);
  return y.dot(A * x);
}

}  // namespace qtdg
