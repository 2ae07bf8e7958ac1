#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "dpp/types.hpp"

namespace dpp {

inline constexpr int kBoundary = -1;

/// A mesh facet (edge in 2D, face in 3D) with its one or two adjacent cells.
///
/// The stored normal is unit length and points out of `plus_cell`, which is
/// always the lower-indexed neighbour. For interior facets the "-" side
/// normal is the negation of `normal`.
struct FacetRecord {
  std::array<int, 4> vertices{};  // in the plus cell's local facet order
  int n_vertices = 0;
  int plus_cell = kBoundary;
  int plus_local = -1;
  int minus_cell = kBoundary;
  int minus_local = -1;
  Vec3 normal{};
  double measure = 0.0;
  Vec3 centroid{};

  bool is_boundary() const { return minus_cell == kBoundary; }
  std::span<const int> vertex_span() const { return {vertices.data(), static_cast<std::size_t>(n_vertices)}; }
};

/// Affine map x = origin + J * xi from the reference cell.
struct CellGeometry {
  int dim = 0;
  Vec3 origin{};
  std::array<Vec3, 3> jacobian{};      // jacobian[r][c] = dx_r / dxi_c
  std::array<Vec3, 3> inv_jacobian{};  // inv_jacobian[r][c] = dxi_r / dx_c
  double det = 0.0;
  double volume = 0.0;

  Vec3 map(const Vec3& xi) const;
  Vec3 pull_back(const Vec3& x) const;
  /// J^{-T} g: reference gradient to physical gradient.
  Vec3 push_gradient(const Vec3& ref_grad) const;
};

/// Structured mesh of the unit square or cube.
///
/// Vertices are numbered lexicographically (x fastest). Cells store their
/// vertices in the local order expected by the reference elements: simplices
/// with a positive Jacobian, boxes in tensor order (vertex i + 2j + 4k).
class Mesh {
 public:
  int dim() const { return dim_; }
  CellKind cell_kind() const { return kind_; }
  int n_div() const { return n_div_; }
  double h() const { return 1.0 / n_div_; }

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_cells() const { return static_cast<int>(cell_vertices_.size()) / vertices_per_cell(kind_); }
  int n_facets() const { return static_cast<int>(facets_.size()); }
  int n_boundary_facets() const;
  int n_interior_facets() const { return n_facets() - n_boundary_facets(); }

  const Vec3& vertex(int v) const { return vertices_[v]; }
  std::span<const Vec3> vertices() const { return vertices_; }
  std::span<const int> cell(int c) const;
  /// Global facet index of local facet `local` of cell `c`.
  int cell_facet(int c, int local) const { return cell_facets_[c * facets_per_cell(kind_) + local]; }
  const FacetRecord& facet(int f) const { return facets_[f]; }
  std::span<const FacetRecord> facets() const { return facets_; }

  /// Plain-text dump: a "vertices" block followed by a "cells" block.
  void write_text(std::ostream& os) const;

  friend Mesh generate_unit_mesh(int dim, CellKind kind, int n_div);

 private:
  int dim_ = 0;
  CellKind kind_ = CellKind::Tri;
  int n_div_ = 0;
  std::vector<Vec3> vertices_;
  std::vector<int> cell_vertices_;
  std::vector<int> cell_facets_;
  std::vector<FacetRecord> facets_;
};

/// Local vertex indices of local facet `local` for the given cell kind.
/// Simplex facet i is opposite vertex i; box facet 2a+s lies at xi_a = s.
std::span<const int> local_facet_vertices(CellKind kind, int local);

Mesh generate_unit_mesh(int dim, CellKind kind, int n_div);

/// Facet records in deterministic order (lexicographic by sorted vertex ids).
std::vector<FacetRecord> facet_adjacency(const Mesh& mesh);

/// Throws std::runtime_error on an inverted or degenerate cell.
CellGeometry cell_geometry(const Mesh& mesh, int cell);

}  // namespace dpp
