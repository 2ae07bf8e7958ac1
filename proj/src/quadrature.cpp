#include "dpp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dpp {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw std::invalid_argument("unsupported quadrature degree " + std::to_string(degree));
}

int points_for_degree(int degree) { return (degree + 2) / 2; }

QuadratureRule tensor_rule(int dim, int degree) {
  const QuadratureRule line = gauss_legendre(points_for_degree(degree));
  QuadratureRule rule;
  rule.degree = degree;
  const std::size_t n = line.size();
  const std::size_t nz = dim == 3 ? n : 1;
  for (std::size_t k = 0; k < nz; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        rule.points.push_back({line.points[i][0], line.points[j][0], dim == 3 ? line.points[k][0] : 0.0});
        rule.weights.push_back(line.weights[i] * line.weights[j] * (dim == 3 ? line.weights[k] : 1.0));
      }
  return rule;
}

// Collapsed (Duffy) rules: Gauss-Legendre on the cube mapped onto the
// simplex, with the Jacobian folded into the weights.
QuadratureRule collapsed_triangle(int degree) {
  const QuadratureRule line = gauss_legendre(points_for_degree(degree + 1));
  QuadratureRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < line.size(); ++i)
    for (std::size_t j = 0; j < line.size(); ++j) {
      const double u = line.points[i][0], v = line.points[j][0];
      rule.points.push_back({u, v * (1.0 - u), 0.0});
      rule.weights.push_back(line.weights[i] * line.weights[j] * (1.0 - u));
    }
  return rule;
}

QuadratureRule collapsed_tetrahedron(int degree) {
  const QuadratureRule line = gauss_legendre(points_for_degree(degree + 2));
  QuadratureRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < line.size(); ++i)
    for (std::size_t j = 0; j < line.size(); ++j)
      for (std::size_t k = 0; k < line.size(); ++k) {
        const double u = line.points[i][0], v = line.points[j][0], w = line.points[k][0];
        rule.points.push_back({u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v)});
        rule.weights.push_back(line.weights[i] * line.weights[j] * line.weights[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
      }
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs at least one point");
  QuadratureRule rule;
  rule.degree = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points.push_back({0.5 * (1.0 - x), 0.0, 0.0});
    rule.weights.push_back(0.5 * w);
  }
  return rule;
}

QuadratureRule quadrature_rule(CellKind kind, int degree) {
  check_degree(degree);
  switch (kind) {
    case CellKind::Quad: return tensor_rule(2, degree);
    case CellKind::Hex: return tensor_rule(3, degree);
    case CellKind::Tri: {
      if (degree <= 1) return {{{1.0 / 3.0, 1.0 / 3.0, 0.0}}, {0.5}, degree};
      if (degree == 2) {
        const double a = 1.0 / 6.0, b = 2.0 / 3.0, w = 1.0 / 6.0;
        return {{{a, a, 0.0}, {b, a, 0.0}, {a, b, 0.0}}, {w, w, w}, degree};
      }
      return collapsed_triangle(degree);
    }
    case CellKind::Tet: {
      if (degree <= 1) return {{{0.25, 0.25, 0.25}}, {1.0 / 6.0}, degree};
      if (degree == 2) {
        const double a = 0.5854101966249685, b = 0.1381966011250105, w = 1.0 / 24.0;
        return {{{b, b, b}, {a, b, b}, {b, a, b}, {b, b, a}}, {w, w, w, w}, degree};
      }
      return collapsed_tetrahedron(degree);
    }
  }
  throw std::invalid_argument("unknown cell kind");
}

FacetShape facet_shape(CellKind kind) {
  switch (kind) {
    case CellKind::Tri:
    case CellKind::Quad: return FacetShape::Segment;
    case CellKind::Tet: return FacetShape::Triangle;
    case CellKind::Hex: return FacetShape::Square;
  }
  return FacetShape::Segment;
}

QuadratureRule facet_quadrature_rule(CellKind kind, int degree) {
  check_degree(degree);
  switch (facet_shape(kind)) {
    case FacetShape::Segment: {
      QuadratureRule r = gauss_legendre(points_for_degree(degree));
      r.degree = degree;
      return r;
    }
    case FacetShape::Triangle: return quadrature_rule(CellKind::Tri, degree);
    case FacetShape::Square: return quadrature_rule(CellKind::Quad, degree);
  }
  return {};
}

}  // namespace dpp
