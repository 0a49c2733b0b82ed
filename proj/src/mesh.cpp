#include "qtdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace qtdg {

std::string to_string(FaceKind k) {
  switch (k) {
    case FaceKind::SpaceLike: return "space-like";
    case FaceKind::TimeLike: return "time-like";
    case FaceKind::Initial: return "initial";
    case FaceKind::Final: return "final";
    case FaceKind::Dirichlet: return "dirichlet";
    case FaceKind::Neumann: return "neumann";
    case FaceKind::Robin: return "robin";
  }
  return "unknown";
}

std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Neumann: return "neumann";
    case BoundaryKind::Robin: return "robin";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "dirichlet") return BoundaryKind::Dirichlet;
  if (s == "neumann") return BoundaryKind::Neumann;
  if (s == "robin") return BoundaryKind::Robin;
  throw std::invalid_argument("unknown boundary kind: " + s);
}

double SpaceTimeMesh::domain_volume() const {
  double v = T;
  for (int k = 0; k < n; ++k) v *= hi[k] - lo[k];
  return v;
}

std::vector<int> SpaceTimeMesh::predecessors(int element) const {
  std::vector<int> out;
  for (int f : elements[element].faces) {
    const Face& F = faces[f];
    if (F.kind == FaceKind::SpaceLike && F.after == element) out.push_back(F.before);
  }
  return out;
}

namespace {

std::vector<SpacePoint> spatial_points(const std::vector<STPoint>& v) {
  std::vector<SpacePoint> out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(p.x);
  return out;
}

STPoint midpoint(const STPoint& a, const STPoint& b) {
  STPoint m;
  m.x = {0.5 * (a.x[0] + b.x[0]), 0.5 * (a.x[1] + b.x[1])};
  m.t = 0.5 * (a.t + b.t);
  return m;
}

STPoint average(const std::vector<STPoint>& v) {
  STPoint m{{0.0, 0.0}, 0.0};
  for (const auto& p : v) {
    m.x[0] += p.x[0];
    m.x[1] += p.x[1];
    m.t += p.t;
  }
  const double s = 1.0 / v.size();
  m.x[0] *= s;
  m.x[1] *= s;
  m.t *= s;
  return m;
}

std::vector<std::pair<int, int>> element_edges(const Element& K) {
  std::vector<std::pair<int, int>> e;
  if (K.shape == ElementShape::Prism) {
    e = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}};
  } else {
    const int m = static_cast<int>(K.vertices.size());
    for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
  }
  return e;
}

void finalize_element(Element& K, int n, const CoefficientField& coeff) {
  const auto& v = K.vertices;
  if (K.shape == ElementShape::Prism) {
    const double area = 0.5 * std::abs((v[1].x[0] - v[0].x[0]) * (v[2].x[1] - v[0].x[1]) -
                                       (v[2].x[0] - v[0].x[0]) * (v[1].x[1] - v[0].x[1]));
    const double dt = v[3].t - v[0].t;
    K.volume = area * dt;
    K.center.x = {(v[0].x[0] + v[1].x[0] + v[2].x[0]) / 3.0,
                  (v[0].x[1] + v[1].x[1] + v[2].x[1]) / 3.0};
    K.center.t = 0.5 * (v[0].t + v[3].t);
  } else {
    // polygon centroid in the (x, t) plane
    double a = 0.0, cx = 0.0, ct = 0.0;
    const int m = static_cast<int>(v.size());
    for (int i = 0; i < m; ++i) {
      const auto& p = v[i];
      const auto& q = v[(i + 1) % m];
      const double cr = p.x[0] * q.t - q.x[0] * p.t;
      a += cr;
      cx += (p.x[0] + q.x[0]) * cr;
      ct += (p.t + q.t) * cr;
    }
    a *= 0.5;
    if (!(a > 0)) throw std::logic_error("element with nonpositive area");
    K.volume = a;
    K.center.x = {cx / (6.0 * a), 0.0};
    K.center.t = ct / (6.0 * a);
  }
  std::vector<STPoint> samples = v;
  for (const auto& [i, j] : element_edges(K)) samples.push_back(midpoint(v[i], v[j]));
  const double cK = wavespeed(coeff, K.center.x);
  K.r_K = 0.0;
  K.r_Kc = 0.0;
  for (const auto& p : samples) {
    double d2 = 0.0, dc2 = 0.0;
    for (int k = 0; k < n; ++k) {
      const double dx = p.x[k] - K.center.x[k];
      d2 += dx * dx;
      dc2 += dx * dx;
    }
    const double dt = p.t - K.center.t;
    d2 += dt * dt;
    const double dct = wavespeed(coeff, p.x) * p.t - cK * K.center.t;
    dc2 += dct * dct;
    K.r_K = std::max(K.r_K, std::sqrt(d2));
    K.r_Kc = std::max(K.r_Kc, std::sqrt(dc2));
  }
  K.sup_c = wavespeed_sup(coeff, spatial_points(v));
}

double face_measure(int n, const std::vector<STPoint>& v) {
  if (n == 1 || v.size() == 2) {
    const double dx = v[1].x[0] - v[0].x[0], dt = v[1].t - v[0].t;
    return std::sqrt(dx * dx + dt * dt);
  }
  if (v.size() == 3) {
    return 0.5 * std::abs((v[1].x[0] - v[0].x[0]) * (v[2].x[1] - v[0].x[1]) -
                          (v[2].x[0] - v[0].x[0]) * (v[1].x[1] - v[0].x[1]));
  }
  const double dx0 = v[1].x[0] - v[0].x[0], dx1 = v[1].x[1] - v[0].x[1];
  return std::sqrt(dx0 * dx0 + dx1 * dx1) * std::abs(v[3].t - v[0].t);
}

/// Adds a face; the normal is oriented out of `before` (or into `after` if before < 0).
int add_face(SpaceTimeMesh& mesh, std::vector<STPoint> verts, FaceKind kind, int before,
             int after, const CoefficientField& coeff, int side = -1) {
  Face F;
  F.id = static_cast<int>(mesh.faces.size());
  F.vertices = std::move(verts);
  const FaceGeometry g = classify_face(mesh.n, F.vertices, coeff);
  F.nx = g.nx;
  F.nt = g.nt;
  F.sup_c = g.sup_c;
  F.kind = kind;
  F.before = before;
  F.after = after;
  F.boundary_side = side;
  F.measure = face_measure(mesh.n, F.vertices);
  const STPoint fc = average(F.vertices);
  if (g.time_like) {
    if (kind == FaceKind::SpaceLike || kind == FaceKind::Initial || kind == FaceKind::Final)
      throw std::domain_error("illegal face: time-like face used as space-like");
    const STPoint& c = mesh.elements[before].center;
    double dot = 0.0;
    for (int k = 0; k < mesh.n; ++k) dot += F.nx[k] * (fc.x[k] - c.x[k]);
    if (dot < 0) {
      F.nx[0] = -F.nx[0];
      F.nx[1] = -F.nx[1];
    }
    F.gamma = 0.0;
  } else {
    if (kind == FaceKind::TimeLike || F.is_boundary())
      throw std::domain_error("illegal face: space-like face on a time-like position");
    F.gamma = (kind == FaceKind::SpaceLike) ? g.gamma : 0.0;
    if (kind == FaceKind::Initial || kind == FaceKind::Final) {
      if (std::abs(F.nt - 1.0) > 1e-12)
        throw std::domain_error("initial/final faces must be horizontal");
    }
  }
  if (before >= 0) mesh.elements[before].faces.push_back(F.id);
  if (after >= 0) mesh.elements[after].faces.push_back(F.id);
  mesh.faces.push_back(std::move(F));
  return mesh.faces.back().id;
}

FaceKind boundary_face_kind(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Dirichlet: return FaceKind::Dirichlet;
    case BoundaryKind::Neumann: return FaceKind::Neumann;
    case BoundaryKind::Robin: return FaceKind::Robin;
  }
  return FaceKind::Dirichlet;
}

STPoint pt(double x, double t) {
  STPoint p;
  p.x = {x, 0.0};
  p.t = t;
  return p;
}

STPoint pt(double x, double y, double t) {
  STPoint p;
  p.x = {x, y};
  p.t = t;
  return p;
}

}  // namespace

FaceGeometry classify_face(int n, const std::vector<STPoint>& v, const CoefficientField& coeff) {
  FaceGeometry g;
  if (n == 1) {
    if (v.size() != 2) throw std::invalid_argument("1+1D faces are segments");
    const double dx = v[1].x[0] - v[0].x[0], dt = v[1].t - v[0].t;
    const double len = std::sqrt(dx * dx + dt * dt);
    if (!(len > 0)) throw std::invalid_argument("degenerate face");
    g.nx = {-dt / len, 0.0};
    g.nt = dx / len;
  } else {
    if (v.size() < 3) throw std::invalid_argument("2+1D faces need at least 3 vertices");
    const double a[3] = {v[1].x[0] - v[0].x[0], v[1].x[1] - v[0].x[1], v[1].t - v[0].t};
    const double b[3] = {v[2].x[0] - v[0].x[0], v[2].x[1] - v[0].x[1], v[2].t - v[0].t};
    double c[3] = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                   a[0] * b[1] - a[1] * b[0]};
    const double len = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    if (!(len > 0)) throw std::invalid_argument("degenerate face");
    g.nx = {c[0] / len, c[1] / len};
    g.nt = c[2] / len;
  }
  if (g.nt < 0) {
    g.nx = {-g.nx[0], -g.nx[1]};
    g.nt = -g.nt;
  }
  const double nx_norm = std::sqrt(g.nx[0] * g.nx[0] + g.nx[1] * g.nx[1]);
  std::vector<SpacePoint> sp;
  for (const auto& p : v) sp.push_back(p.x);
  g.sup_c = wavespeed_sup(coeff, sp);
  if (std::abs(g.nt) < 1e-14) {
    g.nt = 0.0;
    g.time_like = true;
    g.gamma = 0.0;
    const double s = 1.0 / nx_norm;
    g.nx = {g.nx[0] * s, g.nx[1] * s};
    return g;
  }
  const double slope = nx_norm * g.sup_c;
  if (slope > g.nt * (1.0 + 1e-10)) throw std::domain_error("illegal face");
  g.time_like = false;
  g.gamma = std::min(1.0, slope / g.nt);
  return g;
}

SpaceTimeMesh build_cartesian_1d(double x0, double x1, int nx, double T, int nt,
                                 const CoefficientField& coeff, const BoundaryConditions& bc) {
  if (nx < 1 || nt < 1) throw std::invalid_argument("nx and nt must be positive");
  if (coeff.n() != 1) throw std::invalid_argument("1+1D mesh needs n = 1 coefficients");
  SpaceTimeMesh mesh;
  mesh.n = 1;
  mesh.kind = "cartesian";
  mesh.lo = {x0, 0.0};
  mesh.hi = {x1, 0.0};
  mesh.T = T;
  mesh.h = (x1 - x0) / nx;
  mesh.uniform_slabs = true;
  mesh.grid = {nx, 1, nt};
  auto xs = [&](int i) { return i == nx ? x1 : x0 + (x1 - x0) * i / nx; };
  auto ts = [&](int j) { return j == nt ? T : T * j / nt; };
  auto eid = [&](int j, int i) { return j * nx + i; };
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i < nx; ++i) {
      Element K;
      K.id = eid(j, i);
      K.shape = ElementShape::Rectangle;
      K.vertices = {pt(xs(i), ts(j)), pt(xs(i + 1), ts(j)), pt(xs(i + 1), ts(j + 1)),
                    pt(xs(i), ts(j + 1))};
      finalize_element(K, 1, coeff);
      mesh.elements.push_back(std::move(K));
    }
  for (int j = 0; j <= nt; ++j)
    for (int i = 0; i < nx; ++i) {
      std::vector<STPoint> v{pt(xs(i), ts(j)), pt(xs(i + 1), ts(j))};
      if (j == 0)
        add_face(mesh, v, FaceKind::Initial, -1, eid(0, i), coeff);
      else if (j == nt)
        add_face(mesh, v, FaceKind::Final, eid(nt - 1, i), -1, coeff);
      else
        add_face(mesh, v, FaceKind::SpaceLike, eid(j - 1, i), eid(j, i), coeff);
    }
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i <= nx; ++i) {
      std::vector<STPoint> v{pt(xs(i), ts(j)), pt(xs(i), ts(j + 1))};
      if (i == 0)
        add_face(mesh, v, boundary_face_kind(bc.side[0]), eid(j, 0), -1, coeff, 0);
      else if (i == nx)
        add_face(mesh, v, boundary_face_kind(bc.side[1]), eid(j, nx - 1), -1, coeff, 1);
      else
        add_face(mesh, v, FaceKind::TimeLike, eid(j, i - 1), eid(j, i), coeff);
    }
  causal_layers(mesh);
  return mesh;
}

SpaceTimeMesh build_prism_2d(int nxy, double T, int nt, const CoefficientField& coeff,
                             const BoundaryConditions& bc, SpacePoint lo, SpacePoint hi) {
  if (nxy < 1 || nt < 1) throw std::invalid_argument("nxy and nt must be positive");
  if (coeff.n() != 2) throw std::invalid_argument("2+1D mesh needs n = 2 coefficients");
  SpaceTimeMesh mesh;
  mesh.n = 2;
  mesh.kind = "prism";
  mesh.lo = lo;
  mesh.hi = hi;
  mesh.T = T;
  mesh.h = (hi[0] - lo[0]) / nxy;
  mesh.uniform_slabs = true;
  mesh.grid = {nxy, nxy, nt};
  auto coord = [&](int k, int i) {
    return i == nxy ? hi[k] : lo[k] + (hi[k] - lo[k]) * i / nxy;
  };
  auto ts = [&](int j) { return j == nt ? T : T * j / nt; };
  auto vid = [&](int i, int j) { return j * (nxy + 1) + i; };
  std::vector<SpacePoint> verts((nxy + 1) * (nxy + 1));
  for (int j = 0; j <= nxy; ++j)
    for (int i = 0; i <= nxy; ++i) verts[vid(i, j)] = {coord(0, i), coord(1, j)};
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < nxy; ++j)
    for (int i = 0; i < nxy; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      tris.push_back({v00, v10, v11});
      tris.push_back({v00, v11, v01});
    }
  const int ntri = static_cast<int>(tris.size());
  auto eid = [&](int slab, int tri) { return slab * ntri + tri; };
  for (int s = 0; s < nt; ++s)
    for (int k = 0; k < ntri; ++k) {
      Element K;
      K.id = eid(s, k);
      K.shape = ElementShape::Prism;
      for (int lvl = 0; lvl < 2; ++lvl)
        for (int a = 0; a < 3; ++a) {
          const auto& x = verts[tris[k][a]];
          K.vertices.push_back(pt(x[0], x[1], ts(s + lvl)));
        }
      finalize_element(K, 2, coeff);
      mesh.elements.push_back(std::move(K));
    }
  for (int s = 0; s <= nt; ++s)
    for (int k = 0; k < ntri; ++k) {
      std::vector<STPoint> v;
      for (int a = 0; a < 3; ++a) v.push_back(pt(verts[tris[k][a]][0], verts[tris[k][a]][1], ts(s)));
      if (s == 0)
        add_face(mesh, v, FaceKind::Initial, -1, eid(0, k), coeff);
      else if (s == nt)
        add_face(mesh, v, FaceKind::Final, eid(nt - 1, k), -1, coeff);
      else
        add_face(mesh, v, FaceKind::SpaceLike, eid(s - 1, k), eid(s, k), coeff);
    }
  std::map<std::pair<int, int>, std::vector<std::array<int, 3>>> edges;  // (tri, a, b)
  for (int k = 0; k < ntri; ++k)
    for (int a = 0; a < 3; ++a) {
      const int va = tris[k][a], vb = tris[k][(a + 1) % 3];
      edges[{std::min(va, vb), std::max(va, vb)}].push_back({k, va, vb});
    }
  for (int s = 0; s < nt; ++s)
    for (const auto& [key, owners] : edges) {
      const int va = owners[0][1], vb = owners[0][2];
      const auto& A = verts[va];
      const auto& B = verts[vb];
      std::vector<STPoint> v{pt(A[0], A[1], ts(s)), pt(B[0], B[1], ts(s)),
                             pt(B[0], B[1], ts(s + 1)), pt(A[0], A[1], ts(s + 1))};
      if (owners.size() == 2) {
        add_face(mesh, v, FaceKind::TimeLike, eid(s, owners[0][0]), eid(s, owners[1][0]), coeff);
      } else {
        int side = -1;
        if (A[0] == lo[0] && B[0] == lo[0]) side = 0;
        else if (A[0] == hi[0] && B[0] == hi[0]) side = 1;
        else if (A[1] == lo[1] && B[1] == lo[1]) side = 2;
        else if (A[1] == hi[1] && B[1] == hi[1]) side = 3;
        if (side < 0) throw std::logic_error("boundary edge not on the domain boundary");
        add_face(mesh, v, boundary_face_kind(bc.side[side]), eid(s, owners[0][0]), -1, coeff,
                 side);
      }
    }
  causal_layers(mesh);
  return mesh;
}

SpaceTimeMesh pitch_tents_1d(const std::vector<double>& xgrid, double T,
                             const CoefficientField& coeff, double safety,
                             const BoundaryConditions& bc) {
  if (xgrid.size() < 2) throw std::invalid_argument("need at least two grid points");
  if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("safety must be in (0, 1]");
  if (coeff.n() != 1) throw std::invalid_argument("tent pitching needs n = 1 coefficients");
  const int N = static_cast<int>(xgrid.size()) - 1;
  SpaceTimeMesh mesh;
  mesh.n = 1;
  mesh.kind = "tent";
  mesh.lo = {xgrid.front(), 0.0};
  mesh.hi = {xgrid.back(), 0.0};
  mesh.T = T;
  mesh.h = 0.0;
  for (int i = 0; i < N; ++i) mesh.h = std::max(mesh.h, xgrid[i + 1] - xgrid[i]);

  std::vector<double> tf(N + 1, 0.0);
  std::vector<int> below(N, -1);
  const double eps = 1e-12 * T;
  std::size_t guard = 0;
  while (true) {
    int i = -1;
    for (int k = 0; k <= N; ++k)
      if (tf[k] < T && (i < 0 || tf[k] < tf[i])) i = k;
    if (i < 0) break;
    if (++guard > 100000000) throw std::runtime_error("tent pitching stalled");
    const bool left = i > 0, right = i < N;
    const double inf = std::numeric_limits<double>::infinity();
    const double hl = left ? xgrid[i] - xgrid[i - 1] : inf;
    const double hr = right ? xgrid[i + 1] - xgrid[i] : inf;
    std::vector<SpacePoint> region{{xgrid[i], 0.0}};
    if (left) region.push_back({xgrid[i - 1], 0.0});
    if (right) region.push_back({xgrid[i + 1], 0.0});
    const double cmax = wavespeed_sup(coeff, region);
    const double dt = safety * std::min(hl, hr) / cmax;
    if (!(dt > 0)) throw std::runtime_error("tent pitching stalled");
    double tn = tf[i] + dt;
    if (tn > T - eps) tn = T;

    Element K;
    K.id = static_cast<int>(mesh.elements.size());
    K.shape = ElementShape::Polygon;
    K.vertices.push_back(pt(xgrid[i], tf[i]));
    if (right) K.vertices.push_back(pt(xgrid[i + 1], tf[i + 1]));
    K.vertices.push_back(pt(xgrid[i], tn));
    if (left) K.vertices.push_back(pt(xgrid[i - 1], tf[i - 1]));
    finalize_element(K, 1, coeff);
    mesh.elements.push_back(std::move(K));
    const int e = mesh.elements.back().id;

    for (int edge : {i - 1, i}) {
      if (edge < 0 || edge >= N) continue;
      std::vector<STPoint> v{pt(xgrid[edge], tf[edge]), pt(xgrid[edge + 1], tf[edge + 1])};
      if (below[edge] < 0)
        add_face(mesh, v, FaceKind::Initial, -1, e, coeff);
      else
        add_face(mesh, v, FaceKind::SpaceLike, below[edge], e, coeff);
    }
    if (!left)
      add_face(mesh, {pt(xgrid[0], tf[0]), pt(xgrid[0], tn)}, boundary_face_kind(bc.side[0]), e,
               -1, coeff, 0);
    if (!right)
      add_face(mesh, {pt(xgrid[N], tf[N]), pt(xgrid[N], tn)}, boundary_face_kind(bc.side[1]), e,
               -1, coeff, 1);
    tf[i] = tn;
    if (left) below[i - 1] = e;
    if (right) below[i] = e;
  }
  for (int edge = 0; edge < N; ++edge)
    add_face(mesh, {pt(xgrid[edge], T), pt(xgrid[edge + 1], T)}, FaceKind::Final, below[edge],
             -1, coeff);
  causal_layers(mesh);
  return mesh;
}

std::vector<std::vector<int>> causal_layers(SpaceTimeMesh& mesh) {
  const int ne = static_cast<int>(mesh.elements.size());
  std::vector<int> indeg(ne, 0), level(ne, 0);
  std::vector<std::vector<int>> succ(ne);
  for (const Face& F : mesh.faces)
    if (F.kind == FaceKind::SpaceLike) {
      succ[F.before].push_back(F.after);
      ++indeg[F.after];
    }
  std::queue<int> q;
  for (int e = 0; e < ne; ++e)
    if (indeg[e] == 0) q.push(e);
  int visited = 0;
  while (!q.empty()) {
    const int e = q.front();
    q.pop();
    ++visited;
    for (int s : succ[e]) {
      level[s] = std::max(level[s], level[e] + 1);
      if (--indeg[s] == 0) q.push(s);
    }
  }
  if (visited != ne) throw std::runtime_error("cycle in the space-like dependency graph");
  int nl = 0;
  for (int e = 0; e < ne; ++e) nl = std::max(nl, level[e] + 1);
  std::vector<std::vector<int>> layers(ne ? nl : 0);
  for (int e = 0; e < ne; ++e) {
    layers[level[e]].push_back(e);
    mesh.elements[e].layer = level[e];
  }
  mesh.layers = layers;
  return layers;
}

std::vector<QuadPoint> element_quadrature(const SpaceTimeMesh& mesh, const Element& K, int npts) {
  std::vector<QuadPoint> out;
  std::vector<double> x, w;
  gauss_legendre(npts, x, w);
  const auto& v = K.vertices;
  switch (K.shape) {
    case ElementShape::Rectangle: {
      const double x0 = v[0].x[0], x1 = v[2].x[0], t0 = v[0].t, t1 = v[2].t;
      out.reserve(npts * npts);
      for (int a = 0; a < npts; ++a)
        for (int b = 0; b < npts; ++b)
          out.push_back({pt(x0 + x[a] * (x1 - x0), t0 + x[b] * (t1 - t0)),
                         w[a] * w[b] * (x1 - x0) * (t1 - t0)});
      break;
    }
    case ElementShape::Polygon: {
      for (std::size_t k = 1; k + 1 < v.size(); ++k) triangle_rule_st(v[0], v[k], v[k + 1], npts, out);
      break;
    }
    case ElementShape::Prism: {
      std::vector<QuadPoint> tri;
      triangle_rule_space(v[0], v[1], v[2], npts, tri);
      const double t0 = v[0].t, t1 = v[3].t;
      out.reserve(tri.size() * npts);
      for (const auto& q : tri)
        for (int b = 0; b < npts; ++b) {
          STPoint p = q.p;
          p.t = t0 + x[b] * (t1 - t0);
          out.push_back({p, q.w * w[b] * (t1 - t0)});
        }
      break;
    }
  }
  (void)mesh;
  return out;
}

std::vector<QuadPoint> face_quadrature(const SpaceTimeMesh& mesh, const Face& F, int npts) {
  std::vector<QuadPoint> out;
  const auto& v = F.vertices;
  if (mesh.n == 1) {
    segment_rule(v[0], v[1], npts, out);
  } else if (v.size() == 3) {
    triangle_rule_space(v[0], v[1], v[2], npts, out);
  } else {
    std::vector<QuadPoint> seg;
    segment_rule(v[0], v[1], npts, seg);
    std::vector<double> x, w;
    gauss_legendre(npts, x, w);
    const double t0 = v[0].t, t1 = v[3].t;
    for (const auto& q : seg)
      for (int b = 0; b < npts; ++b) {
        STPoint p = q.p;
        p.t = t0 + x[b] * (t1 - t0);
        out.push_back({p, q.w * w[b] * (t1 - t0)});
      }
  }
  return out;
}

void dump_mesh(std::ostream& os, const SpaceTimeMesh& mesh) {
  std::map<std::tuple<double, double, double>, int> ids;
  std::vector<STPoint> pts;
  auto vid = [&](const STPoint& p) {
    auto key = std::make_tuple(p.x[0], mesh.n == 2 ? p.x[1] : 0.0, p.t);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const int id = static_cast<int>(pts.size());
    ids.emplace(key, id);
    pts.push_back(p);
    return id;
  };
  std::vector<std::vector<int>> ev, fv;
  for (const auto& K : mesh.elements) {
    std::vector<int> l;
    for (const auto& p : K.vertices) l.push_back(vid(p));
    ev.push_back(l);
  }
  for (const auto& F : mesh.faces) {
    std::vector<int> l;
    for (const auto& p : F.vertices) l.push_back(vid(p));
    fv.push_back(l);
  }
  os << std::setprecision(17);
  os << "# n " << mesh.n << " kind " << mesh.kind << " T " << mesh.T << "\n";
  os << "VERTICES " << pts.size() << "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << i << ' ' << pts[i].x[0] << ' ';
    if (mesh.n == 2) os << pts[i].x[1] << ' ';
    os << pts[i].t << "\n";
  }
  static const char* shapes[] = {"rectangle", "polygon", "prism"};
  os << "ELEMENTS " << mesh.elements.size() << "\n";
  for (const auto& K : mesh.elements) {
    os << K.id << ' ' << shapes[static_cast<int>(K.shape)] << ' ' << K.layer << ' '
       << K.vertices.size();
    for (int v : ev[K.id]) os << ' ' << v;
    os << ' ' << K.center.x[0] << ' ';
    if (mesh.n == 2) os << K.center.x[1] << ' ';
    os << K.center.t << ' ' << K.volume << ' ' << K.r_K << ' ' << K.r_Kc << "\n";
  }
  os << "FACES " << mesh.faces.size() << "\n";
  for (const auto& F : mesh.faces) {
    os << F.id << ' ' << to_string(F.kind) << ' ' << F.before << ' ' << F.after << ' '
       << F.nx[0] << ' ';
    if (mesh.n == 2) os << F.nx[1] << ' ';
    os << F.nt << ' ' << F.gamma << ' ' << F.vertices.size();
    for (int v : fv[F.id]) os << ' ' << v;
    os << "\n";
  }
}

}  // namespace qtdg
