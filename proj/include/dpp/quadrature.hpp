#pragma once

#include <vector>

#include "dpp/types.hpp"

namespace dpp {

/// Points and weights on a reference cell. Weights sum to the reference
/// measure (1/2 triangle, 1/6 tetrahedron, 1 for [0,1]^d and the unit segment).
struct QuadratureRule {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return points.size(); }
};

inline constexpr int kMaxQuadratureDegree = 6;

/// Rule exact for polynomials of total degree <= `degree` (per-axis degree
/// for QUAD/HEX). Throws std::invalid_argument for degree outside [0, 6].
QuadratureRule quadrature_rule(CellKind kind, int degree);

/// Gauss-Legendre rule on [0,1] with `n` points.
QuadratureRule gauss_legendre(int n);

/// Shape of a facet of the given cell kind.
enum class FacetShape { Segment, Triangle, Square };
FacetShape facet_shape(CellKind kind);

/// Rule on the reference facet (unit segment, unit triangle or unit square).
QuadratureRule facet_quadrature_rule(CellKind kind, int degree);

}  // namespace dpp
