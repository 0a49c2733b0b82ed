#pragma once

#include <vector>

#include "qtdg/polynomial.hpp"

namespace qtdg {

struct QuadPoint {
  STPoint p;
  double w;
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int npts, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule over the space-time triangle (a, b, c) in 1+1D, collapsed-square Gauss.
void triangle_rule_st(const STPoint& a, const STPoint& b, const STPoint& c, int npts,
                      std::vector<QuadPoint>& out);
/// Rule over the spatial triangle (a, b, c) at fixed time t, 2+1D.
void triangle_rule_space(const STPoint& a, const STPoint& b, const STPoint& c, int npts,
                         std::vector<QuadPoint>& out);
/// Rule over the segment (a, b) in any dimension, weights include length.
void segment_rule(const STPoint& a, const STPoint& b, int npts, std::vector<QuadPoint>& out);

}  // namespace qtdg
