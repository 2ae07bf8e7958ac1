#include "dpp/elements.hpp"

#include <cmath>
#include <stdexcept>

#include "dpp/quadrature.hpp"
#include <string>

namespace dpp {

namespace {

void require_inside(CellKind kind, const Vec3& xi) {
  if (!inside_reference_cell(kind, xi))
    throw std::domain_error("point (" + std::to_string(xi[0]) + ", " + std::to_string(xi[1]) + ", " +
                            std::to_string(xi[2]) + ") is outside the reference " + to_string(kind));
}

void require_kind(ElementFamily family, CellKind kind) {
  bool ok = true;
  switch (family) {
    case ElementFamily::P1: ok = is_simplex(kind); break;
    case ElementFamily::Q1: ok = !is_simplex(kind); break;
    case ElementFamily::RT_TRI: ok = kind == CellKind::Tri; break;
    case ElementFamily::RT_QUAD: ok = kind == CellKind::Quad; break;
    case ElementFamily::RT_TET: ok = kind == CellKind::Tet; break;
    case ElementFamily::RT_HEX: ok = kind == CellKind::Hex; break;
    case ElementFamily::DP0_DQ0: break;
  }
  if (!ok) throw std::invalid_argument("element family does not match cell kind " + to_string(kind));
}

bool is_vector_family(ElementFamily f) {
  return f == ElementFamily::RT_TRI || f == ElementFamily::RT_QUAD || f == ElementFamily::RT_TET ||
         f == ElementFamily::RT_HEX;
}

}  // namespace

ElementFamily nodal_family(CellKind kind) { return is_simplex(kind) ? ElementFamily::P1 : ElementFamily::Q1; }

ElementFamily hdiv_family(CellKind kind) {
  switch (kind) {
    case CellKind::Tri: return ElementFamily::RT_TRI;
    case CellKind::Quad: return ElementFamily::RT_QUAD;
    case CellKind::Tet: return ElementFamily::RT_TET;
    case CellKind::Hex: return ElementFamily::RT_HEX;
  }
  return ElementFamily::RT_TRI;
}

ElementLayout element_layout(ElementFamily family, CellKind kind) {
  require_kind(family, kind);
  switch (family) {
    case ElementFamily::P1:
    case ElementFamily::Q1: return {DofEntity::Vertex, 0, vertices_per_cell(kind)};
    case ElementFamily::DP0_DQ0: return {DofEntity::Cell, 0, 1};
    default: return {DofEntity::Facet, 1, facets_per_cell(kind)};
  }
}

bool inside_reference_cell(CellKind kind, const Vec3& xi, double tol) {
  const int d = cell_dim(kind);
  for (int i = 0; i < d; ++i)
    if (xi[i] < -tol) return false;
  if (is_simplex(kind)) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += xi[i];
    return s <= 1.0 + tol;
  }
  for (int i = 0; i < d; ++i)
    if (xi[i] > 1.0 + tol) return false;
  return true;
}

ScalarBasis eval_scalar_basis(ElementFamily family, CellKind kind, const Vec3& xi) {
  require_kind(family, kind);
  require_inside(kind, xi);
  ScalarBasis b;
  const int d = cell_dim(kind);
  switch (family) {
    case ElementFamily::DP0_DQ0:
      b.count = 1;
      b.value[0] = 1.0;
      return b;
    case ElementFamily::P1: {
      b.count = d + 1;
      b.value[0] = 1.0;
      for (int i = 0; i < d; ++i) {
        b.value[0] -= xi[i];
        b.value[i + 1] = xi[i];
        b.grad[0][i] = -1.0;
        b.grad[i + 1][i] = 1.0;
      }
      return b;
    }
    case ElementFamily::Q1: {
      b.count = 1 << d;
      for (int n = 0; n < b.count; ++n) {
        double v = 1.0;
        std::array<double, 3> f{}, df{};
        for (int a = 0; a < d; ++a) {
          const int bit = (n >> a) & 1;
          f[a] = bit ? xi[a] : 1.0 - xi[a];
          df[a] = bit ? 1.0 : -1.0;
          v *= f[a];
        }
        b.value[n] = v;
        for (int a = 0; a < d; ++a) {
          double g = df[a];
          for (int o = 0; o < d; ++o)
            if (o != a) g *= f[o];
          b.grad[n][a] = g;
        }
      }
      return b;
    }
    default: throw std::invalid_argument("family is vector-valued");
  }
}

VectorBasis eval_vector_basis(ElementFamily family, CellKind kind, const Vec3& xi) {
  require_kind(family, kind);
  require_inside(kind, xi);
  if (!is_vector_family(family)) throw std::invalid_argument("family is scalar-valued");
  VectorBasis b;
  const int d = cell_dim(kind);
  if (is_simplex(kind)) {
    // phi_i = (xi - v_i) / (d |K|), v_i the reference vertex opposite facet i.
    const double scale = kind == CellKind::Tri ? 1.0 : 2.0;
    b.count = d + 1;
    for (int i = 0; i <= d; ++i) {
      Vec3 vi{};
      if (i > 0) vi[i - 1] = 1.0;
      for (int a = 0; a < d; ++a) b.value[i][a] = scale * (xi[a] - vi[a]);
      b.div[i] = scale * d;
    }
    return b;
  }
  // Facet 2a+s sits at xi_a = s; outward normal is -e_a (s=0) or +e_a (s=1).
  b.count = 2 * d;
  for (int a = 0; a < d; ++a) {
    b.value[2 * a][a] = -(1.0 - xi[a]);
    b.value[2 * a + 1][a] = xi[a];
    b.div[2 * a] = 1.0;
    b.div[2 * a + 1] = 1.0;
  }
  return b;
}

BasisEval eval_basis(ElementFamily family, CellKind kind, const Vec3& xi) {
  if (is_vector_family(family)) return eval_vector_basis(family, kind, xi);
  return eval_scalar_basis(family, kind, xi);
}

VectorBasis piola_map(const CellGeometry& g, const VectorBasis& ref) {
  if (!(g.det > 0.0)) throw std::domain_error("Piola map needs a positive Jacobian determinant");
  VectorBasis out;
  out.count = ref.count;
  const double inv_det = 1.0 / g.det;
  for (int i = 0; i < ref.count; ++i) {
    for (int r = 0; r < g.dim; ++r) {
      double s = 0.0;
      for (int c = 0; c < g.dim; ++c) s += g.jacobian[r][c] * ref.value[i][c];
      out.value[i][r] = s * inv_det;
    }
    out.div[i] = ref.div[i] * inv_det;
  }
  return out;
}

ScalarBasis push_forward(const CellGeometry& g, const ScalarBasis& ref) {
  ScalarBasis out = ref;
  for (int i = 0; i < ref.count; ++i) out.grad[i] = g.push_gradient(ref.grad[i]);
  return out;
}

FacetQuadrature facet_quadrature(const Mesh& mesh, int facet, int degree) {
  const FacetRecord& rec = mesh.facet(facet);
  const QuadratureRule rule = facet_quadrature_rule(mesh.cell_kind(), degree);
  const Vec3& v0 = mesh.vertex(rec.vertices[0]);
  const Vec3 e1 = mesh.vertex(rec.vertices[1]) - v0;
  const Vec3 e2 = rec.n_vertices > 2 ? mesh.vertex(rec.vertices[2]) - v0 : Vec3{};
  const double ref_measure = facet_shape(mesh.cell_kind()) == FacetShape::Triangle ? 0.5 : 1.0;
  FacetQuadrature q;
  q.points.reserve(rule.size());
  q.weights.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec3& s = rule.points[i];
    q.points.push_back(v0 + s[0] * e1 + s[1] * e2);
    q.weights.push_back(rule.weights[i] * rec.measure / ref_measure);
  }
  return q;
}

CellQuadrature cell_quadrature(const CellGeometry& g, CellKind kind, int degree) {
  const QuadratureRule rule = quadrature_rule(kind, degree);
  CellQuadrature q;
  q.ref_points = rule.points;
  q.points.reserve(rule.size());
  q.weights.reserve(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    q.points.push_back(g.map(rule.points[i]));
    q.weights.push_back(rule.weights[i] * std::abs(g.det));
  }
  return q;
}

long long dof_count(Formulation formulation, CellKind kind, int n_div) {
  if (n_div < 1) throw std::invalid_argument("n_div must be >= 1");
  const long long n = n_div;
  const int d = cell_dim(kind);
  const long long vertices = d == 2 ? (n + 1) * (n + 1) : (n + 1) * (n + 1) * (n + 1);
  long long cells = 0, facets = 0;
  switch (kind) {
    case CellKind::Tri: cells = 2 * n * n; facets = 3 * n * n + 2 * n; break;
    case CellKind::Quad: cells = n * n; facets = 2 * n * (n + 1); break;
    case CellKind::Tet: cells = 6 * n * n * n; facets = 12 * n * n * n + 6 * n * n; break;
    case CellKind::Hex: cells = n * n * n; facets = 3 * n * n * (n + 1); break;
  }
  const long long fields_per_node = 2LL * d + 2;
  switch (formulation) {
    case Formulation::Hdiv: return 2 * (facets + cells);
    case Formulation::CgVms: return fields_per_node * vertices;
    case Formulation::DgVms: return fields_per_node * vertices_per_cell(kind) * cells;
  }
  return 0;
}

long long dof_count(Formulation formulation, const Mesh& mesh) {
  const long long fields_per_node = 2LL * mesh.dim() + 2;
  switch (formulation) {
    case Formulation::Hdiv: return 2LL * (mesh.n_facets() + mesh.n_cells());
    case Formulation::CgVms: return fields_per_node * mesh.n_vertices();
    case Formulation::DgVms:
      return fields_per_node * vertices_per_cell(mesh.cell_kind()) * static_cast<long long>(mesh.n_cells());
  }
  return 0;
}

}  // namespace dpp
