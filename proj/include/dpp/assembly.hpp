#pragma once

#include <array>
#include <string>
#include <vector>

#include "dpp/linalg/csr.hpp"
#include "dpp/mesh.hpp"
#include "dpp/problem.hpp"
#include "dpp/types.hpp"

namespace dpp {

struct AssemblyStats {
  double seconds = 0.0;
  std::array<std::array<long long, kNumFields>, kNumFields> nnz{};
};

/// Four-field block system in the field order (u1, p1, u2, p2).
///
/// blocks[i][j] couples test field i with trial field j. Only the ten
/// blocks of the DPP system are populated; the rest are empty matrices of
/// the right shape.
struct BlockSystem {
  Formulation formulation = Formulation::Hdiv;
  CellKind cell_kind = CellKind::Tri;
  int n_div = 0;
  std::array<int, kNumFields> sizes{};
  std::array<std::array<linalg::CsrMatrix, kNumFields>, kNumFields> blocks;
  std::array<linalg::Vector, kNumFields> rhs;
  AssemblyStats stats;

  const linalg::CsrMatrix& block(Field row, Field col) const { return blocks[int(row)][int(col)]; }
  linalg::CsrMatrix& block(Field row, Field col) { return blocks[int(row)][int(col)]; }
  int size(Field f) const { return sizes[int(f)]; }
  int offset(Field f) const;
  int total_size() const;
  /// Global indices of field f in the monolithic ordering.
  std::vector<int> index_set(Field f) const;

  /// Shape checks. Throws std::logic_error.
  void validate() const;
};

struct AssemblyOptions {
  int workers = 1;
  int quadrature_degree = 2;
  int boundary_degree = 4;
  /// CG-VMS only. Boundary pressures always enter through -(w.n; p0); with
  /// this set they are additionally fixed at the nodes by elimination.
  bool strong_pressure = false;
};

BlockSystem assemble_hdiv(const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                          const AssemblyOptions& options = {});
BlockSystem assemble_cgvms(const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                           const AssemblyOptions& options = {});
BlockSystem assemble_dgvms(const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                           const AssemblyOptions& options = {});
BlockSystem assemble(Formulation formulation, const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                     const AssemblyOptions& options = {});

/// Interior-facet penalty operators of DG-VMS for one network:
/// uu = eta_u h (mu/k) [[w]][[u]], pp = (eta_p/h) (k/mu) [[q]].[[p]].
///
/// Both are also kept in factored form J^T W J, where J maps coefficients to
/// jumps at the facet quadrature points and W holds the weights. The
/// energies are evaluated from the jumps, so they carry no cancellation
/// error.
struct JumpPenalty {
  linalg::CsrMatrix uu;
  linalg::CsrMatrix pp;
  linalg::CsrMatrix jump_u;  // normal-velocity jump per facet point
  linalg::CsrMatrix jump_p;  // pressure jump per facet point
  linalg::Vector weight_u;
  linalg::Vector weight_p;

  double energy_u(std::span<const double> u) const;
  double energy_p(std::span<const double> p) const;
};
JumpPenalty dg_jump_penalty(const Mesh& mesh, const DppParameters& params, int network);

/// Known values for constrained DoFs, per field.
struct DirichletSet {
  std::array<std::vector<std::pair<int, double>>, kNumFields> values;
  bool empty() const;
};

/// Symmetric elimination: known values move to the right-hand side, the
/// constrained rows and columns are zeroed in every block, the diagonal
/// entry is kept and the right-hand side set to diag * value.
void apply_dirichlet(BlockSystem& system, const DirichletSet& constraints);

/// Strong constraints used by CG-VMS: normal velocity components on
/// velocity-region facets (axis-aligned boundaries) and, optionally, the
/// pressure-region nodes.
DirichletSet cg_dirichlet_set(const Mesh& mesh, const BoundarySpec& bcs, bool include_pressure);

struct MonolithicSystem {
  linalg::CsrMatrix matrix;
  linalg::Vector rhs;
  std::array<int, kNumFields + 1> offsets{};
};

MonolithicSystem monolithic_view(const BlockSystem& system);

/// y = K x computed block by block.
linalg::Vector block_multiply(const BlockSystem& system, std::span<const double> x);

/// Splits a monolithic vector into its four field segments.
std::array<linalg::Vector, kNumFields> split_fields(const BlockSystem& system, std::span<const double> x);
linalg::Vector join_fields(const BlockSystem& system, const std::array<linalg::Vector, kNumFields>& fields);

/// Writes `<prefix>_K.mtx` (monolithic matrix) and `<prefix>_f.mtx`.
void export_matrix_market(const BlockSystem& system, const std::string& prefix);

}  // namespace dpp
