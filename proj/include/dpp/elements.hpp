#pragma once

#include <array>
#include <variant>
#include <vector>

#include "dpp/mesh.hpp"
#include "dpp/types.hpp"

namespace dpp {

/// Lowest-order element families used by the three discretizations.
///
///   P1 / Q1          nodal scalar, one DoF per vertex
///   DP0_DQ0          cellwise constant
///   RT_TRI, RT_TET   Raviart-Thomas (RTF1 / N1F1), one flux DoF per facet
///   RT_QUAD, RT_HEX  tensor-product H(div) (RTCF1 / NCF1), one flux DoF per facet
enum class ElementFamily { P1, Q1, DP0_DQ0, RT_TRI, RT_QUAD, RT_TET, RT_HEX };

enum class DofEntity { Vertex, Cell, Facet };

struct ElementLayout {
  DofEntity entity;
  int value_rank;   // 0 scalar, 1 vector
  int dofs_per_cell;
};

ElementLayout element_layout(ElementFamily family, CellKind kind);
ElementFamily nodal_family(CellKind kind);
ElementFamily hdiv_family(CellKind kind);

inline constexpr int kMaxLocalDofs = 8;

struct ScalarBasis {
  int count = 0;
  std::array<double, kMaxLocalDofs> value{};
  std::array<Vec3, kMaxLocalDofs> grad{};
};

/// Vector basis with outward unit flux through the matching local facet.
struct VectorBasis {
  int count = 0;
  std::array<Vec3, kMaxLocalDofs> value{};
  std::array<double, kMaxLocalDofs> div{};
};

using BasisEval = std::variant<ScalarBasis, VectorBasis>;

/// Evaluates a family on its reference cell. Throws std::domain_error if
/// `xi` lies outside the reference cell by more than 1e-12.
BasisEval eval_basis(ElementFamily family, CellKind kind, const Vec3& xi);
ScalarBasis eval_scalar_basis(ElementFamily family, CellKind kind, const Vec3& xi);
VectorBasis eval_vector_basis(ElementFamily family, CellKind kind, const Vec3& xi);

/// Reference-cell check with the 1e-12 tolerance used by eval_basis.
bool inside_reference_cell(CellKind kind, const Vec3& xi, double tol = 1e-12);

/// Contravariant Piola transform: values J v / det J, divergences div / det J.
VectorBasis piola_map(const CellGeometry& geometry, const VectorBasis& reference);

/// Scalar basis pushed forward: values unchanged, gradients J^{-T} grad.
ScalarBasis push_forward(const CellGeometry& geometry, const ScalarBasis& reference);

/// Physical quadrature points on a mesh facet; weights include the facet measure.
struct FacetQuadrature {
  std::vector<Vec3> points;
  std::vector<double> weights;
};
FacetQuadrature facet_quadrature(const Mesh& mesh, int facet, int degree);

/// Physical quadrature points on a cell; weights include |det J|.
struct CellQuadrature {
  std::vector<Vec3> ref_points;
  std::vector<Vec3> points;
  std::vector<double> weights;
};
CellQuadrature cell_quadrature(const CellGeometry& geometry, CellKind kind, int degree);

/// Total number of degrees of freedom for the four-field system.
long long dof_count(Formulation formulation, const Mesh& mesh);
long long dof_count(Formulation formulation, CellKind kind, int n_div);

}  // namespace dpp
