#include "qtdg/solver.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace qtdg {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// DiscreteSolution

DiscreteSolution::DiscreteSolution(const SpaceTimeMesh& mesh,
                                   std::shared_ptr<const DiscreteSpace> space,
                                   const CoefficientField& coeff)
    : mesh_(&mesh), space_(std::move(space)), coeff_(coeff), x_(Vec::Zero(space_->ndof)) {
  build_locator();
}

Vec DiscreteSolution::local(int e) const {
  return x_.segment(space_->offset[e], space_->dim(e));
}

BasisValues DiscreteSolution::basis_values(int e, const std::vector<QuadPoint>& pts,
                                           bool derivatives) const {
  return evaluate_basis(*space_->local[e], space_->centers[e], pts, coeff_, derivatives);
}

void DiscreteSolution::values(int e, const std::vector<QuadPoint>& pts, Vec& v,
                              std::array<Vec, 2>& sigma) const {
  const BasisValues V = basis_values(e, pts, false);
  const Vec xe = local(e);
  v = V.w * xe;
  for (int k = 0; k < 2; ++k)
    sigma[k] = k < mesh_->n ? Vec(V.tau[k] * xe) : Vec(Vec::Zero(pts.size()));
}

FieldValue DiscreteSolution::eval(int e, const STPoint& p) const {
  Vec v;
  std::array<Vec, 2> s;
  values(e, {QuadPoint{p, 1.0}}, v, s);
  return {v(0), {s[0](0), s[1](0)}};
}

FieldValue DiscreteSolution::eval(const STPoint& p) const {
  const int e = locate(p);
  if (e < 0) throw std::out_of_range("point outside the space-time domain");
  return eval(e, p);
}

namespace {

constexpr double kLocateTol = 1e-12;

/// Cell index of s in [0, n] with points on an interface assigned to the lower cell.
int cell_index(double s, int n) {
  const int i = static_cast<int>(std::ceil(s)) - 1;
  return std::clamp(i, 0, n - 1);
}

bool in_polygon(const std::vector<STPoint>& v, double x, double t) {
  const std::size_t m = v.size();
  for (std::size_t a = 0; a < m; ++a) {
    const STPoint& p = v[a];
    const STPoint& q = v[(a + 1) % m];
    const double ex = q.x[0] - p.x[0], et = q.t - p.t;
    const double cr = ex * (t - p.t) - et * (x - p.x[0]);
    const double len = std::hypot(ex, et);
    if (cr < -kLocateTol * std::max(1.0, len)) return false;
  }
  return true;
}

}  // namespace

void DiscreteSolution::build_locator() {
  if (mesh_->kind != "tent") return;
  double lo = mesh_->lo[0], hi = mesh_->hi[0];
  const int nb = std::max<int>(1, static_cast<int>(std::sqrt(mesh_->elements.size())));
  bucket_x0_ = lo;
  bucket_dx_ = (hi - lo) / nb;
  auto b = std::make_shared<std::vector<std::vector<int>>>(nb);
  for (const auto& K : mesh_->elements) {
    double a = 1e300, z = -1e300;
    for (const auto& p : K.vertices) {
      a = std::min(a, p.x[0]);
      z = std::max(z, p.x[0]);
    }
    const int i0 = std::clamp(static_cast<int>(std::floor((a - lo) / bucket_dx_)) - 1, 0, nb - 1);
    const int i1 = std::clamp(static_cast<int>(std::floor((z - lo) / bucket_dx_)) + 1, 0, nb - 1);
    for (int i = i0; i <= i1; ++i) (*b)[i].push_back(K.id);
  }
  buckets_ = b;
}

int DiscreteSolution::locate(const STPoint& p) const {
  const auto& M = *mesh_;
  const double tol = kLocateTol * std::max(1.0, M.T);
  if (p.t < -tol || p.t > M.T + tol) return -1;
  for (int k = 0; k < M.n; ++k) {
    const double w = M.hi[k] - M.lo[k];
    if (p.x[k] < M.lo[k] - kLocateTol * w || p.x[k] > M.hi[k] + kLocateTol * w) return -1;
  }
  const double st = p.t / M.T;
  if (M.kind == "cartesian") {
    const int nx = M.grid[0], nt = M.grid[2];
    const int i = cell_index((p.x[0] - M.lo[0]) / (M.hi[0] - M.lo[0]) * nx, nx);
    const int j = cell_index(st * nt, nt);
    return j * nx + i;
  }
  if (M.kind == "prism") {
    const int nxy = M.grid[0], nt = M.grid[2];
    const double sx = (p.x[0] - M.lo[0]) / (M.hi[0] - M.lo[0]) * nxy;
    const double sy = (p.x[1] - M.lo[1]) / (M.hi[1] - M.lo[1]) * nxy;
    const int i = cell_index(sx, nxy), j = cell_index(sy, nxy), s = cell_index(st * nt, nt);
    const int upper = (sy - j) <= (sx - i) ? 0 : 1;
    return s * 2 * nxy * nxy + 2 * (j * nxy + i) + upper;
  }
  if (buckets_) {
    const int nb = static_cast<int>(buckets_->size());
    const int i = std::clamp(static_cast<int>(std::floor((p.x[0] - bucket_x0_) / bucket_dx_)), 0, nb - 1);
    int best = -1;
    for (int e : (*buckets_)[i])
      if ((best < 0 || e < best) && in_polygon(M.elements[e].vertices, p.x[0], p.t)) best = e;
    return best;
  }
  for (const auto& K : M.elements)
    if (M.n == 1 && in_polygon(K.vertices, p.x[0], p.t)) return K.id;
  return -1;
}

// ---------------------------------------------------------------------------
// Block assembly and factorization

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void add_block(std::vector<Triplet>& trip, int oa, int ob, const Mat& M) {
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i)
      if (M(i, j) != 0.0) trip.emplace_back(oa + i, ob + j, M(i, j));
}

/// Local offsets of the block elements; returns the block size.
int set_local(const DiscreteSpace& S, const std::vector<int>& elems, std::vector<int>& loc) {
  int nd = 0;
  for (int e : elems) {
    loc[e] = nd;
    nd += S.dim(e);
  }
  return nd;
}

void clear_local(const std::vector<int>& elems, std::vector<int>& loc) {
  for (int e : elems) loc[e] = -1;
}

using Incoming = std::function<Mat(int f)>;
using Outgoing = std::function<void(int f, Mat&& M)>;

/// Matrix (optional) and right-hand side of one block. Predecessor values are read from x.
void assemble_block(const AssemblyContext& ctx, const std::vector<int>& elems,
                    const std::vector<int>& loc, std::vector<Triplet>* trip, Vec& rhs,
                    const Vec& x, const Incoming& incoming, const Outgoing& outgoing) {
  const auto& S = ctx.space;
  const auto& mesh = ctx.mesh;
  for (int e : elems) {
    const int oe = loc[e];
    const int de = S.dim(e);
    if (trip) add_block(*trip, oe, oe, volume_matrix(ctx, e));
    for (int f : mesh.elements[e].faces) {
      const Face& F = mesh.faces[f];
      switch (F.kind) {
        case FaceKind::SpaceLike:
          if (F.after == e) {
            const Mat C = incoming(f);
            rhs.segment(oe, de) -= C * x.segment(S.offset[F.before], S.dim(F.before));
          } else if (trip) {
            FaceMatrices fm = face_matrices(ctx, f);
            add_block(*trip, oe, oe, fm.M[0][0]);
            outgoing(f, std::move(fm.M[1][0]));
          }
          break;
        case FaceKind::TimeLike:
          if (trip && F.before == e) {
            const int oo = loc[F.after];
            if (oo < 0) throw std::logic_error("time-like face couples different blocks");
            const FaceMatrices fm = face_matrices(ctx, f);
            const int o[2] = {oe, oo};
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) add_block(*trip, o[a], o[b], fm.M[a][b]);
          }
          break;
        case FaceKind::Initial:
          rhs.segment(oe, de) += face_rhs(ctx, f).rhs[1];
          break;
        case FaceKind::Final:
          if (trip) add_block(*trip, oe, oe, face_matrices(ctx, f).M[0][0]);
          break;
        default:
          if (trip) {
            const FaceMatrices fm = face_matrices(ctx, f);
            add_block(*trip, oe, oe, fm.M[0][0]);
            rhs.segment(oe, de) += fm.rhs[0];
          } else {
            rhs.segment(oe, de) += face_rhs(ctx, f).rhs[0];
          }
      }
    }
  }
}

struct Factor {
  int n = 0;
  bool dense = true;
  Mat A;
  Eigen::PartialPivLU<Mat> lu;
  SpMat As;
  std::shared_ptr<Eigen::SparseLU<SpMat>> slu;
};

/// Empty string on success.
std::string factorize(const std::vector<Triplet>& trip, int n, const SolveOptions& opt, Factor& F) {
  F.n = n;
  F.dense = n <= opt.dense_limit;
  if (F.dense) {
    F.A = Mat::Zero(n, n);
    for (const auto& t : trip) F.A(t.row(), t.col()) += t.value();
    F.lu.compute(F.A);
    const auto d = F.lu.matrixLU().diagonal().cwiseAbs();
    const double mx = d.maxCoeff(), mn = d.minCoeff();
    if (!(mx > 0.0) || !(mn >= opt.pivot_tol * mx)) {
      std::ostringstream os;
      os << "singular block: pivot ratio " << (mx > 0 ? mn / mx : 0.0);
      return os.str();
    }
    return {};
  }
  F.As.resize(n, n);
  F.As.setFromTriplets(trip.begin(), trip.end());
  F.As.makeCompressed();
  F.slu = std::make_shared<Eigen::SparseLU<SpMat>>();
  F.slu->analyzePattern(F.As);
  F.slu->factorize(F.As);
  if (F.slu->info() != Eigen::Success) return "sparse LU failed: " + F.slu->lastErrorMessage();
  return {};
}

Vec apply_solve(const Factor& F, const Vec& b) {
  if (F.dense) return F.lu.solve(b);
  return F.slu->solve(b);
}

double relative_residual(const Factor& F, const Vec& x, const Vec& b) {
  const Vec r = F.dense ? Vec(F.A * x - b) : Vec(F.As * x - b);
  const double nb = b.norm();
  return nb > 0.0 ? r.norm() / nb : r.norm();
}

std::vector<std::vector<int>> split_blocks(const SpaceTimeMesh& mesh, const std::vector<int>& layer) {
  std::unordered_map<int, int> pos;
  for (std::size_t i = 0; i < layer.size(); ++i) pos[layer[i]] = static_cast<int>(i);
  std::vector<int> parent(layer.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (int e : layer)
    for (int f : mesh.elements[e].faces) {
      const Face& F = mesh.faces[f];
      if (F.kind != FaceKind::TimeLike || F.before != e) continue;
      auto it = pos.find(F.after);
      if (it == pos.end()) throw std::logic_error("time-like face crosses causal layers");
      const int a = find(pos[e]), b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < layer.size(); ++i) groups[find(static_cast<int>(i))].push_back(layer[i]);
  std::vector<std::vector<int>> out;
  for (auto& [k, g] : groups) {
    std::sort(g.begin(), g.end());
    out.push_back(std::move(g));
  }
  return out;
}

bool same_mu(const DGParameters& P, int a, int b) {
  auto close = [](double u, double v) {
    return std::abs(u - v) <= 1e-12 * std::max({std::abs(u), std::abs(v), 1e-300});
  };
  return close(P.mu1_K[a], P.mu1_K[b]) && close(P.mu2_K[a], P.mu2_K[b]);
}

void fail(SolveReport& R, const std::string& msg) {
  if (R.ok) {
    R.ok = false;
    R.failure = msg;
  }
}

}  // namespace

SolveResult solve(const SpaceTimeMesh& mesh, SpaceKind kind, int p, const CoefficientField& coeff,
                  const DGParameters& params, const BoundaryData& data, const SolveOptions& opt) {
  const auto t_start = Clock::now();
  auto space = std::make_shared<DiscreteSpace>(build_discrete_space(mesh, coeff, kind, p));
  SolveResult res{DiscreteSolution(mesh, space, coeff), {}};
  SolveReport& R = res.report;
  Vec& x = res.solution.coefficients();
  const AssemblyContext ctx{mesh, *space, coeff, params, data, opt.quad_points};
  const int nel = static_cast<int>(mesh.elements.size());
  const int nlayers = static_cast<int>(mesh.layers.size());

  bool uniform = opt.reuse_slabs && mesh.uniform_slabs && nlayers > 1;
  const int per = nlayers > 0 ? static_cast<int>(mesh.layers[0].size()) : 0;
  for (int j = 0; uniform && j < nlayers; ++j) {
    if (static_cast<int>(mesh.layers[j].size()) != per) uniform = false;
    for (int i = 0; uniform && i < per; ++i)
      if (mesh.layers[j][i] != j * per + mesh.layers[0][i]) uniform = false;
  }

  std::vector<Mat> coupling(mesh.faces.size());
  std::unordered_map<long long, Mat> cache;
  auto key = [&](int f) {
    const Face& F = mesh.faces[f];
    return static_cast<long long>(F.before % per) * per + F.after % per;
  };
  Incoming incoming = [&](int f) -> Mat {
    if (uniform) return cache.at(key(f));
    Mat C = std::move(coupling[f]);
    coupling[f] = Mat();
    return C;
  };
  Outgoing outgoing = [&](int f, Mat&& M) {
    if (uniform) {
      cache.try_emplace(key(f), std::move(M));
    } else {
      coupling[f] = std::move(M);
    }
  };

  std::vector<int> loc(nel, -1);
  std::vector<std::vector<int>> base_blocks;
  std::vector<Factor> base_factors;
  for (int j = 0; j < nlayers && R.ok; ++j) {
    const auto& layer = mesh.layers[j];
    std::vector<std::vector<int>> blocks;
    if (uniform && j > 0) {
      for (const auto& b : base_blocks) {
        std::vector<int> s(b);
        for (int& e : s) e += j * per;
        blocks.push_back(std::move(s));
      }
    } else {
      blocks = split_blocks(mesh, layer);
    }
    bool reuse = uniform && j > 0;
    for (int i = 0; reuse && i < per; ++i)
      if (!same_mu(params, j * per + mesh.layers[0][i], mesh.layers[0][i])) reuse = false;

    int dofs = 0;
    for (std::size_t b = 0; b < blocks.size() && R.ok; ++b) {
      const auto& elems = blocks[b];
      const int nd = set_local(*space, elems, loc);
      dofs += nd;
      Vec rhs = Vec::Zero(nd);
      std::vector<Triplet> trip;
      auto t0 = Clock::now();
      assemble_block(ctx, elems, loc, reuse ? nullptr : &trip, rhs, x, incoming, outgoing);
      R.assembly_seconds += seconds_since(t0);
      Factor local_factor;
      const Factor* F = nullptr;
      if (reuse) {
        F = &base_factors[b];
      } else {
        t0 = Clock::now();
        const std::string err = factorize(trip, nd, opt, local_factor);
        R.factor_seconds += seconds_since(t0);
        ++R.factorizations;
        if (!err.empty()) {
          fail(R, "layer " + std::to_string(j) + ": " + err);
          clear_local(elems, loc);
          break;
        }
        if (uniform && j == 0) {
          base_factors.push_back(std::move(local_factor));
          F = &base_factors.back();
        } else {
          F = &local_factor;
        }
      }
      t0 = Clock::now();
      const Vec xl = apply_solve(*F, rhs);
      R.solve_seconds += seconds_since(t0);
      const double res_b = relative_residual(*F, xl, rhs);
      R.max_residual = std::max(R.max_residual, res_b);
      if (!(res_b <= opt.residual_tol))
        fail(R, "layer " + std::to_string(j) + ": residual " + std::to_string(res_b));
      for (int e : elems) x.segment(space->offset[e], space->dim(e)) = xl.segment(loc[e], space->dim(e));
      clear_local(elems, loc);
    }
    if (uniform && j == 0) base_blocks = blocks;
    R.layer_dofs.push_back(dofs);
    R.layer_elements.push_back(static_cast<int>(layer.size()));
  }
  if (opt.estimate_condition && R.ok)
    R.cond_estimate = condition_estimate(first_layer_matrix(mesh, *space, coeff, params, opt.quad_points));
  R.total_seconds = seconds_since(t_start);
  return res;
}

SolveResult solve_tents_parallel(const SpaceTimeMesh& mesh, SpaceKind kind, int p,
                                 const CoefficientField& coeff, const DGParameters& params,
                                 const BoundaryData& data, int workers, const SolveOptions& opt) {
  for (const auto& F : mesh.faces)
    if (F.kind == FaceKind::TimeLike)
      throw std::invalid_argument("parallel element solves need a mesh without time-like faces");
  const auto t_start = Clock::now();
  auto space = std::make_shared<DiscreteSpace>(build_discrete_space(mesh, coeff, kind, p));
  SolveResult res{DiscreteSolution(mesh, space, coeff), {}};
  SolveReport& R = res.report;
  Vec& x = res.solution.coefficients();
  const AssemblyContext ctx{mesh, *space, coeff, params, data, opt.quad_points};
  const int nel = static_cast<int>(mesh.elements.size());

  std::vector<int> pending(nel, 0);
  std::vector<std::vector<int>> succ(nel);
  for (const auto& F : mesh.faces)
    if (F.kind == FaceKind::SpaceLike) {
      ++pending[F.after];
      succ[F.before].push_back(F.after);
    }
  std::vector<Mat> coupling(mesh.faces.size());
  std::vector<double> residual(nel, 0.0);

  std::mutex mu;
  std::condition_variable cv;
  std::deque<int> ready;
  for (int e = 0; e < nel; ++e)
    if (pending[e] == 0) ready.push_back(e);
  int done = 0;
  std::string failure;

  auto worker = [&]() {
    std::vector<int> loc(nel, -1);
    for (;;) {
      int e;
      {
        std::unique_lock<std::mutex> lk(mu);
        cv.wait(lk, [&] { return !ready.empty() || done == nel || !failure.empty(); });
        if (ready.empty()) return;
        e = ready.front();
        ready.pop_front();
      }
      const std::vector<int> elems{e};
      const int nd = set_local(*space, elems, loc);
      Vec rhs = Vec::Zero(nd);
      std::vector<Triplet> trip;
      Incoming incoming = [&](int f) -> Mat {
        Mat C = std::move(coupling[f]);
        coupling[f] = Mat();
        return C;
      };
      Outgoing outgoing = [&](int f, Mat&& M) { coupling[f] = std::move(M); };
      std::string err;
      try {
        assemble_block(ctx, elems, loc, &trip, rhs, x, incoming, outgoing);
        Factor F;
        err = factorize(trip, nd, opt, F);
        if (err.empty()) {
          const Vec xl = apply_solve(F, rhs);
          residual[e] = relative_residual(F, xl, rhs);
          if (!(residual[e] <= opt.residual_tol)) err = "residual " + std::to_string(residual[e]);
          x.segment(space->offset[e], nd) = xl;
        }
      } catch (const std::exception& ex) {
        err = ex.what();
      }
      clear_local(elems, loc);
      {
        std::lock_guard<std::mutex> lk(mu);
        ++done;
        if (!err.empty() && failure.empty())
          failure = "element " + std::to_string(e) + " (layer " +
                    std::to_string(mesh.elements[e].layer) + "): " + err;
        for (int s : succ[e])
          if (--pending[s] == 0) ready.push_back(s);
      }
      cv.notify_all();
    }
  };
  const int nw = std::max(1, workers);
  std::vector<std::thread> pool;
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  R.factorizations = nel;
  if (!failure.empty()) fail(R, failure);
  else if (done != nel) fail(R, "dependency cycle among elements");
  for (double r : residual) R.max_residual = std::max(R.max_residual, r);
  for (const auto& L : mesh.layers) {
    int d = 0;
    for (int e : L) d += space->dim(e);
    R.layer_dofs.push_back(d);
    R.layer_elements.push_back(static_cast<int>(L.size()));
  }
  if (opt.estimate_condition && R.ok)
    R.cond_estimate = condition_estimate(first_layer_matrix(mesh, *space, coeff, params, opt.quad_points));
  R.total_seconds = seconds_since(t_start);
  return res;
}

SolveResult solve_monolithic(const SpaceTimeMesh& mesh, SpaceKind kind, int p,
                             const CoefficientField& coeff, const DGParameters& params,
                             const BoundaryData& data, const SolveOptions& opt) {
  const auto t_start = Clock::now();
  auto space = std::make_shared<DiscreteSpace>(build_discrete_space(mesh, coeff, kind, p));
  SolveResult res{DiscreteSolution(mesh, space, coeff), {}};
  SolveReport& R = res.report;
  const AssemblyContext ctx{mesh, *space, coeff, params, data, opt.quad_points};
  Vec rhs;
  auto t0 = Clock::now();
  SpMat A = assemble_global(ctx, rhs);
  A.makeCompressed();
  R.assembly_seconds = seconds_since(t0);
  t0 = Clock::now();
  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  R.factor_seconds = seconds_since(t0);
  R.factorizations = 1;
  if (lu.info() != Eigen::Success) {
    fail(R, "sparse LU failed: " + lu.lastErrorMessage());
  } else {
    t0 = Clock::now();
    res.solution.coefficients() = lu.solve(rhs);
    R.solve_seconds = seconds_since(t0);
    const double nb = rhs.norm();
    const double r = (A * res.solution.coefficients() - rhs).norm();
    R.max_residual = nb > 0 ? r / nb : r;
    if (!(R.max_residual <= opt.residual_tol)) fail(R, "residual " + std::to_string(R.max_residual));
  }
  R.layer_dofs = {space->ndof};
  R.layer_elements = {static_cast<int>(mesh.elements.size())};
  if (opt.estimate_condition && R.ok)
    R.cond_estimate = condition_estimate(first_layer_matrix(mesh, *space, coeff, params, opt.quad_points));
  R.total_seconds = seconds_since(t_start);
  return res;
}

// ---------------------------------------------------------------------------
// Condition estimates

double condition_estimate_1norm(double norm1, const std::function<Vec(const Vec&)>& solve_a,
                                const std::function<Vec(const Vec&)>& solve_t, int n) {
  if (n <= 0) return 0.0;
  Vec xv = Vec::Constant(n, 1.0 / n);
  double est = 0.0;
  int last_j = -1;
  for (int it = 0; it < 5; ++it) {
    const Vec y = solve_a(xv);
    const double ny = y.lpNorm<1>();
    if (!std::isfinite(ny)) return std::numeric_limits<double>::infinity();
    if (it > 0 && ny <= est) break;
    est = ny;
    Vec s(n);
    for (int i = 0; i < n; ++i) s(i) = y(i) >= 0 ? 1.0 : -1.0;
    const Vec z = solve_t(s);
    int j = 0;
    z.cwiseAbs().maxCoeff(&j);
    if (it > 0 && (j == last_j || std::abs(z(j)) <= z.dot(xv))) break;
    last_j = j;
    xv.setZero();
    xv(j) = 1.0;
  }
  // Higham's alternating-sign safeguard
  Vec b(n);
  for (int i = 0; i < n; ++i) b(i) = (i % 2 ? -1.0 : 1.0) * (1.0 + static_cast<double>(i) / std::max(1, n - 1));
  const double alt = 2.0 * solve_a(b).lpNorm<1>() / (3.0 * n);
  est = std::max(est, alt);
  return norm1 * est;
}

namespace {

double norm1_dense(const Mat& A) { return A.cwiseAbs().colwise().sum().maxCoeff(); }

double norm1_sparse(const SpMat& A) {
  double m = 0.0;
  for (int j = 0; j < A.outerSize(); ++j) {
    double s = 0.0;
    for (SpMat::InnerIterator it(A, j); it; ++it) s += std::abs(it.value());
    m = std::max(m, s);
  }
  return m;
}

}  // namespace

double condition_estimate(const Mat& A) {
  Eigen::PartialPivLU<Mat> lu(A);
  return condition_estimate_1norm(
      norm1_dense(A), [&](const Vec& b) -> Vec { return lu.solve(b); },
      [&](const Vec& b) -> Vec { return lu.transpose().solve(b); }, static_cast<int>(A.rows()));
}

double condition_estimate(const SpMat& A) {
  SpMat C = A;
  C.makeCompressed();
  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(C);
  lu.factorize(C);
  if (lu.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  return condition_estimate_1norm(
      norm1_sparse(C), [&](const Vec& b) -> Vec { return lu.solve(b); },
      [&](const Vec& b) -> Vec { return lu.transpose().solve(b); }, static_cast<int>(C.rows()));
}

SpMat first_layer_matrix(const SpaceTimeMesh& mesh, const DiscreteSpace& space,
                         const CoefficientField& coeff, const DGParameters& params, int quad_points) {
  const BoundaryData data = BoundaryData::homogeneous();
  const AssemblyContext ctx{mesh, space, coeff, params, data, quad_points};
  std::vector<int> loc(mesh.elements.size(), -1);
  std::vector<int> elems = mesh.layers.at(0);
  std::sort(elems.begin(), elems.end());
  const int nd = set_local(space, elems, loc);
  std::vector<Triplet> trip;
  Vec rhs = Vec::Zero(nd);
  const Vec x = Vec::Zero(space.ndof);
  assemble_block(ctx, elems, loc, &trip, rhs, x, [](int) { return Mat(); }, [](int, Mat&&) {});
  SpMat A(nd, nd);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

}  // namespace qtdg
