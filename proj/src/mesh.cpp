#include "dpp/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dpp {

namespace {

constexpr int kTriFacets[3][2] = {{1, 2}, {0, 2}, {0, 1}};
constexpr int kTetFacets[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
constexpr int kQuadFacets[4][2] = {{0, 2}, {1, 3}, {0, 1}, {2, 3}};
constexpr int kHexFacets[6][4] = {{0, 2, 4, 6}, {1, 3, 5, 7}, {0, 1, 4, 5},
                                  {2, 3, 6, 7}, {0, 1, 2, 3}, {4, 5, 6, 7}};

double reference_volume(CellKind kind) {
  switch (kind) {
    case CellKind::Tri: return 0.5;
    case CellKind::Tet: return 1.0 / 6.0;
    default: return 1.0;
  }
}

int grid_index(int i, int j, int k, int n) { return i + (n + 1) * (j + (n + 1) * k); }

Vec3 facet_centroid(const Mesh& mesh, const FacetRecord& f) {
  Vec3 c{};
  for (int v : f.vertex_span()) c = c + mesh.vertex(v);
  return (1.0 / f.n_vertices) * c;
}

Vec3 cell_centroid(const Mesh& mesh, int cell) {
  Vec3 c{};
  auto verts = mesh.cell(cell);
  for (int v : verts) c = c + mesh.vertex(v);
  return (1.0 / static_cast<double>(verts.size())) * c;
}

// Unit normal (arbitrary sign) and measure of a facet from its vertices.
void facet_normal_measure(const Mesh& mesh, FacetRecord& f) {
  const Vec3& a = mesh.vertex(f.vertices[0]);
  const Vec3& b = mesh.vertex(f.vertices[1]);
  if (mesh.dim() == 2) {
    Vec3 t = b - a;
    f.measure = norm(t);
    f.normal = (1.0 / f.measure) * Vec3{t[1], -t[0], 0.0};
    return;
  }
  const Vec3& c = mesh.vertex(f.vertices[2]);
  Vec3 n = cross(b - a, c - a);
  double len = norm(n);
  // Triangle faces are half the spanned parallelogram; box faces in tensor
  // order span the full parallelogram.
  f.measure = f.n_vertices == 3 ? 0.5 * len : len;
  f.normal = (1.0 / len) * n;
}

}  // namespace

std::string to_string(CellKind k) {
  switch (k) {
    case CellKind::Tri: return "tri";
    case CellKind::Quad: return "quad";
    case CellKind::Tet: return "tet";
    case CellKind::Hex: return "hex";
  }
  return "?";
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::Hdiv: return "hdiv";
    case Formulation::CgVms: return "cgvms";
    case Formulation::DgVms: return "dgvms";
  }
  return "?";
}

std::string to_string(Field f) {
  switch (f) {
    case Field::U1: return "u1";
    case Field::P1: return "p1";
    case Field::U2: return "u2";
    case Field::P2: return "p2";
  }
  return "?";
}

CellKind parse_cell_kind(std::string_view s) {
  if (s == "tri" || s == "TRI") return CellKind::Tri;
  if (s == "quad" || s == "QUAD") return CellKind::Quad;
  if (s == "tet" || s == "TET") return CellKind::Tet;
  if (s == "hex" || s == "HEX") return CellKind::Hex;
  throw std::invalid_argument("unknown cell kind '" + std::string(s) + "'");
}

Formulation parse_formulation(std::string_view s) {
  if (s == "hdiv") return Formulation::Hdiv;
  if (s == "cgvms") return Formulation::CgVms;
  if (s == "dgvms") return Formulation::DgVms;
  throw std::invalid_argument("unknown formulation '" + std::string(s) + "'");
}

std::span<const int> local_facet_vertices(CellKind kind, int local) {
  switch (kind) {
    case CellKind::Tri: return kTriFacets[local];
    case CellKind::Quad: return kQuadFacets[local];
    case CellKind::Tet: return kTetFacets[local];
    case CellKind::Hex: return kHexFacets[local];
  }
  return {};
}

Vec3 CellGeometry::map(const Vec3& xi) const {
  Vec3 x = origin;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) x[r] += jacobian[r][c] * xi[c];
  return x;
}

Vec3 CellGeometry::pull_back(const Vec3& x) const {
  Vec3 d = x - origin;
  Vec3 xi{};
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) xi[r] += inv_jacobian[r][c] * d[c];
  return xi;
}

Vec3 CellGeometry::push_gradient(const Vec3& g) const {
  Vec3 out{};
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) out[r] += inv_jacobian[c][r] * g[c];
  return out;
}

int Mesh::n_boundary_facets() const {
  return static_cast<int>(std::count_if(facets_.begin(), facets_.end(),
                                        [](const FacetRecord& f) { return f.is_boundary(); }));
}

std::span<const int> Mesh::cell(int c) const {
  const int nv = vertices_per_cell(kind_);
  return {cell_vertices_.data() + static_cast<std::size_t>(c) * nv, static_cast<std::size_t>(nv)};
}

void Mesh::write_text(std::ostream& os) const {
  os << "vertices " << n_vertices() << '\n';
  for (const auto& v : vertices_) {
    os << v[0] << ' ' << v[1];
    if (dim_ == 3) os << ' ' << v[2];
    os << '\n';
  }
  os << "cells " << n_cells() << '\n';
  for (int c = 0; c < n_cells(); ++c) {
    auto verts = cell(c);
    for (std::size_t i = 0; i < verts.size(); ++i) os << (i ? " " : "") << verts[i];
    os << '\n';
  }
}

Mesh generate_unit_mesh(int dim, CellKind kind, int n_div) {
  if (n_div < 1) throw std::invalid_argument("n_div must be >= 1");
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  if (cell_dim(kind) != dim)
    throw std::invalid_argument("cell kind " + to_string(kind) + " is inconsistent with dim " + std::to_string(dim));

  Mesh mesh;
  mesh.dim_ = dim;
  mesh.kind_ = kind;
  mesh.n_div_ = n_div;
  const int n = n_div;
  const double h = 1.0 / n;
  const int nz = dim == 3 ? n + 1 : 1;

  mesh.vertices_.reserve(static_cast<std::size_t>(n + 1) * (n + 1) * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        mesh.vertices_.push_back({i * h, j * h, dim == 3 ? k * h : 0.0});

  auto& cv = mesh.cell_vertices_;
  if (dim == 2) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const int v00 = grid_index(i, j, 0, n), v10 = grid_index(i + 1, j, 0, n);
        const int v01 = grid_index(i, j + 1, 0, n), v11 = grid_index(i + 1, j + 1, 0, n);
        if (kind == CellKind::Quad) {
          cv.insert(cv.end(), {v00, v10, v01, v11});
        } else {
          // Both triangles share the (i,j)-(i+1,j+1) diagonal.
          cv.insert(cv.end(), {v00, v10, v11});
          cv.insert(cv.end(), {v00, v11, v01});
        }
      }
    }
  } else {
    static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
          if (kind == CellKind::Hex) {
            for (int c = 0; c < 8; ++c) cv.push_back(grid_index(i + (c & 1), j + ((c >> 1) & 1), k + ((c >> 2) & 1), n));
            continue;
          }
          // Kuhn subdivision: one tetrahedron per monotone path (0,0,0) -> (1,1,1).
          for (const auto& perm : kPerms) {
            std::array<int, 3> step{0, 0, 0};
            std::array<int, 4> tet{};
            tet[0] = grid_index(i, j, k, n);
            for (int s = 0; s < 3; ++s) {
              step[perm[s]] = 1;
              tet[s + 1] = grid_index(i + step[0], j + step[1], k + step[2], n);
            }
            const int parity = (perm[0] > perm[1]) + (perm[0] > perm[2]) + (perm[1] > perm[2]);
            if (parity % 2 == 1) std::swap(tet[2], tet[3]);
            cv.insert(cv.end(), tet.begin(), tet.end());
          }
        }
      }
    }
  }

  for (int c = 0; c < mesh.n_cells(); ++c) (void)cell_geometry(mesh, c);

  mesh.facets_ = facet_adjacency(mesh);
  const int nf = facets_per_cell(kind);
  mesh.cell_facets_.assign(static_cast<std::size_t>(mesh.n_cells()) * nf, -1);
  for (int f = 0; f < mesh.n_facets(); ++f) {
    const auto& rec = mesh.facets_[f];
    mesh.cell_facets_[rec.plus_cell * nf + rec.plus_local] = f;
    if (!rec.is_boundary()) mesh.cell_facets_[rec.minus_cell * nf + rec.minus_local] = f;
  }
  return mesh;
}

std::vector<FacetRecord> facet_adjacency(const Mesh& mesh) {
  struct Entry {
    std::array<int, 4> key;
    int cell;
    int local;
  };
  const CellKind kind = mesh.cell_kind();
  const int nf = facets_per_cell(kind);
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(mesh.n_cells()) * nf);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    auto verts = mesh.cell(c);
    for (int l = 0; l < nf; ++l) {
      Entry e{{-1, -1, -1, -1}, c, l};
      auto lv = local_facet_vertices(kind, l);
      for (std::size_t i = 0; i < lv.size(); ++i) e.key[i] = verts[lv[i]];
      std::sort(e.key.begin(), e.key.begin() + static_cast<long>(lv.size()));
      entries.push_back(e);
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.key != b.key ? a.key < b.key : a.cell < b.cell;
  });

  std::vector<FacetRecord> facets;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].key == entries[i].key) ++j;
    if (j - i > 2) throw std::runtime_error("facet shared by more than two cells");

    FacetRecord f;
    f.plus_cell = entries[i].cell;
    f.plus_local = entries[i].local;
    if (j - i == 2) {
      f.minus_cell = entries[i + 1].cell;
      f.minus_local = entries[i + 1].local;
    }
    auto lv = local_facet_vertices(kind, f.plus_local);
    auto cv = mesh.cell(f.plus_cell);
    f.n_vertices = static_cast<int>(lv.size());
    for (std::size_t k = 0; k < lv.size(); ++k) f.vertices[k] = cv[lv[k]];
    facet_normal_measure(mesh, f);
    f.centroid = facet_centroid(mesh, f);
    if (dot(f.normal, f.centroid - cell_centroid(mesh, f.plus_cell)) < 0.0) f.normal = -1.0 * f.normal;
    facets.push_back(f);
    i = j;
  }
  return facets;
}

CellGeometry cell_geometry(const Mesh& mesh, int cell) {
  if (cell < 0 || cell >= mesh.n_cells()) throw std::out_of_range("cell index out of range");
  const int dim = mesh.dim();
  auto verts = mesh.cell(cell);
  CellGeometry g;
  g.dim = dim;
  g.origin = mesh.vertex(verts[0]);

  // Columns of J: reference axis images. Box cells use vertices 1, 2, 4.
  std::array<int, 3> axis_vertex = is_simplex(mesh.cell_kind()) ? std::array<int, 3>{1, 2, 3}
                                                                 : std::array<int, 3>{1, 2, 4};
  std::array<Vec3, 3> J{};
  for (int c = 0; c < 3; ++c) {
    if (c < dim) {
      Vec3 col = mesh.vertex(verts[axis_vertex[c]]) - g.origin;
      for (int r = 0; r < 3; ++r) J[r][c] = col[r];
    } else {
      J[c][c] = 1.0;
    }
  }
  const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                     J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                     J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
  if (!(det > 0.0)) throw std::runtime_error("cell " + std::to_string(cell) + " has non-positive Jacobian determinant");

  std::array<Vec3, 3> inv{};
  inv[0][0] = (J[1][1] * J[2][2] - J[1][2] * J[2][1]) / det;
  inv[0][1] = (J[0][2] * J[2][1] - J[0][1] * J[2][2]) / det;
  inv[0][2] = (J[0][1] * J[1][2] - J[0][2] * J[1][1]) / det;
  inv[1][0] = (J[1][2] * J[2][0] - J[1][0] * J[2][2]) / det;
  inv[1][1] = (J[0][0] * J[2][2] - J[0][2] * J[2][0]) / det;
  inv[1][2] = (J[0][2] * J[1][0] - J[0][0] * J[1][2]) / det;
  inv[2][0] = (J[1][0] * J[2][1] - J[1][1] * J[2][0]) / det;
  inv[2][1] = (J[0][1] * J[2][0] - J[0][0] * J[2][1]) / det;
  inv[2][2] = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) / det;

  g.jacobian = J;
  g.inv_jacobian = inv;
  g.det = det;
  g.volume = det * reference_volume(mesh.cell_kind());
  return g;
}

}  // namespace dpp
