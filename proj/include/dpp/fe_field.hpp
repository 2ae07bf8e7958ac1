#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "dpp/linalg/csr.hpp"
#include "dpp/mesh.hpp"
#include "dpp/problem.hpp"
#include "dpp/types.hpp"

namespace dpp {

/// Coefficient vectors of the four fields (u1, p1, u2, p2).
using FieldVectors = std::array<linalg::Vector, kNumFields>;

/// Value of one discrete field inside cell `cell` at reference point `xi`.
/// Scalar fields use component 0.
Vec3 evaluate_field(const Mesh& mesh, Formulation formulation, Field field, std::span<const double> coeffs, int cell,
                    const Vec3& xi);

/// Degrees of freedom of the exact fields: nodal values for CG/DG, facet
/// fluxes (along the facet's stored normal) and cell means for H(div).
FieldVectors interpolate_exact(const Mesh& mesh, Formulation formulation, const ManufacturedSolution& mms,
                               int quadrature_degree = 4);

/// ||f_h - f||_{L2(Omega)} by cellwise quadrature. For velocity fields the
/// Euclidean norm of the pointwise difference is integrated.
double l2_error(const Mesh& mesh, Formulation formulation, Field field, std::span<const double> coeffs,
                const std::function<Vec3(const Vec3&)>& exact, int quadrature_degree = 4);

/// All four L2 errors against a manufactured solution.
std::array<double, kNumFields> l2_errors(const Mesh& mesh, Formulation formulation, const FieldVectors& fields,
                                         const ManufacturedSolution& mms, int quadrature_degree = 4);

/// Exact-field component accessor for l2_error.
std::function<Vec3(const Vec3&)> exact_component(const ManufacturedSolution& mms, Field field);

/// Per-cell integral of div u_i + (beta/mu)(p_i - p_j) (sign flipped for the
/// micro network) for an H(div) solution.
std::vector<double> hdiv_cell_mass_balance(const Mesh& mesh, const DppParameters& params, const FieldVectors& fields,
                                           int network);

}  // namespace dpp
