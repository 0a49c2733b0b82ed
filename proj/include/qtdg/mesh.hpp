#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "qtdg/coefficients.hpp"
#include "qtdg/polynomial.hpp"
#include "qtdg/quadrature.hpp"

namespace qtdg {

enum class FaceKind { SpaceLike, TimeLike, Initial, Final, Dirichlet, Neumann, Robin };
enum class BoundaryKind { Dirichlet, Neumann, Robin };
enum class ElementShape { Rectangle, Polygon, Prism };

std::string to_string(FaceKind k);
std::string to_string(BoundaryKind k);
BoundaryKind parse_boundary_kind(const std::string& s);

/// Boundary condition per side: 1D {x = x0, x = x1}; 2D {x1 = lo, x1 = hi, x2 = lo, x2 = hi}.
struct BoundaryConditions {
  std::array<BoundaryKind, 4> side{BoundaryKind::Dirichlet, BoundaryKind::Dirichlet,
                                   BoundaryKind::Dirichlet, BoundaryKind::Dirichlet};
  static BoundaryConditions all(BoundaryKind k) {
    BoundaryConditions b;
    b.side.fill(k);
    return b;
  }
};

struct Element {
  int id = -1;
  ElementShape shape = ElementShape::Rectangle;
  /// Rectangle: 4 vertices counter-clockwise from (x0,t0). Polygon: counter-clockwise,
  /// first vertex is the fan root. Prism: bottom triangle then top triangle.
  std::vector<STPoint> vertices;
  STPoint center;
  double volume = 0.0;
  double r_K = 0.0;
  double r_Kc = 0.0;
  double sup_c = 0.0;
  std::vector<int> faces;
  int layer = -1;
};

/// The normal (nx, nt) points out of `before` and into `after`.
/// Space-like: before = earlier element. Initial: only `after`. Final/boundary: only `before`.
struct Face {
  int id = -1;
  std::vector<STPoint> vertices;
  SpacePoint nx{0.0, 0.0};
  double nt = 0.0;
  FaceKind kind = FaceKind::SpaceLike;
  int before = -1;
  int after = -1;
  double gamma = 0.0;
  double measure = 0.0;
  double sup_c = 0.0;
  int boundary_side = -1;

  bool is_boundary() const {
    return kind == FaceKind::Dirichlet || kind == FaceKind::Neumann || kind == FaceKind::Robin;
  }
};

struct SpaceTimeMesh {
  int n = 1;
  std::string kind;
  SpacePoint lo{0.0, 0.0};
  SpacePoint hi{0.0, 0.0};
  double T = 0.0;
  double h = 0.0;
  std::vector<Element> elements;
  std::vector<Face> faces;
  std::vector<std::vector<int>> layers;
  /// Layers are time translates of each other with matching element order.
  bool uniform_slabs = false;
  /// Structured meshes: cells per direction (x1, x2, t); zero otherwise.
  std::array<int, 3> grid{0, 0, 0};

  double domain_volume() const;
  std::vector<int> predecessors(int element) const;
};

struct FaceGeometry {
  SpacePoint nx{0.0, 0.0};
  double nt = 0.0;
  bool time_like = false;
  double gamma = 0.0;
  double sup_c = 0.0;
};

/// Unit normal with nt >= 0, space-like/time-like classification and gamma.
/// Throws std::domain_error("illegal face") when 0 < nt < |nx| sup_F c.
FaceGeometry classify_face(int n, const std::vector<STPoint>& vertices,
                           const CoefficientField& coeff);

SpaceTimeMesh build_cartesian_1d(double x0, double x1, int nx, double T, int nt,
                                 const CoefficientField& coeff,
                                 const BoundaryConditions& bc = {});

/// Split-square triangulation of [lo, hi] with nxy squares per direction, nt slabs.
SpaceTimeMesh build_prism_2d(int nxy, double T, int nt, const CoefficientField& coeff,
                             const BoundaryConditions& bc = {}, SpacePoint lo = {0.0, 0.0},
                             SpacePoint hi = {1.0, 1.0});

SpaceTimeMesh pitch_tents_1d(const std::vector<double>& xgrid, double T,
                             const CoefficientField& coeff, double safety,
                             const BoundaryConditions& bc = {});

/// Assigns causal layers (longest path in the space-like dependency DAG).
std::vector<std::vector<int>> causal_layers(SpaceTimeMesh& mesh);

std::vector<QuadPoint> element_quadrature(const SpaceTimeMesh& mesh, const Element& K, int npts);
std::vector<QuadPoint> face_quadrature(const SpaceTimeMesh& mesh, const Face& F, int npts);

/// Line-oriented dump with VERTICES / ELEMENTS / FACES sections.
void dump_mesh(std::ostream& os, const SpaceTimeMesh& mesh);

}  // namespace qtdg
