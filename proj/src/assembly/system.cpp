#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "detail.hpp"
#include "dpp/linalg/matrix_market.hpp"

namespace dpp {

namespace detail {

namespace {

bool is_dpp_block(int r, int c) {
  const Field fr = Field(r), fc = Field(c);
  if (network_of(fr) == network_of(fc)) return true;
  return !is_velocity(fr) && !is_velocity(fc);  // K12, K21
}

}  // namespace

void finalize(BlockSystem& sys, const std::vector<Sink>& sinks) {
  for (int r = 0; r < kNumFields; ++r) {
    for (int c = 0; c < kNumFields; ++c) {
      std::size_t total = 0;
      for (const auto& s : sinks) total += s.mat[r][c].size();
      std::vector<linalg::Triplet> all;
      all.reserve(total);
      for (const auto& s : sinks) all.insert(all.end(), s.mat[r][c].begin(), s.mat[r][c].end());
      if (!all.empty() && !is_dpp_block(r, c)) throw std::logic_error("contribution outside the DPP block pattern");
      sys.blocks[r][c] = linalg::CsrMatrix::from_triplets(sys.sizes[r], sys.sizes[c], all);
      sys.stats.nnz[r][c] = sys.blocks[r][c].nnz();
    }
    sys.rhs[r].assign(sys.sizes[r], 0.0);
    for (const auto& s : sinks)
      for (const auto& [i, v] : s.vec[r]) sys.rhs[r][i] += v;
  }
}

ScalarBasis nodal_basis_at(const CellGeometry& g, CellKind kind, const Vec3& xi) {
  return push_forward(g, eval_scalar_basis(nodal_family(kind), kind, xi));
}

VectorBasis hdiv_basis_at(const CellGeometry& g, CellKind kind, const Vec3& xi) {
  return piola_map(g, eval_vector_basis(hdiv_family(kind), kind, xi));
}

}  // namespace detail

int BlockSystem::offset(Field f) const {
  int o = 0;
  for (int i = 0; i < int(f); ++i) o += sizes[i];
  return o;
}

int BlockSystem::total_size() const {
  int n = 0;
  for (int s : sizes) n += s;
  return n;
}

std::vector<int> BlockSystem::index_set(Field f) const {
  std::vector<int> idx(size(f));
  const int o = offset(f);
  for (int i = 0; i < size(f); ++i) idx[i] = o + i;
  return idx;
}

void BlockSystem::validate() const {
  for (int r = 0; r < kNumFields; ++r) {
    if (static_cast<int>(rhs[r].size()) != sizes[r]) throw std::logic_error("right-hand side size mismatch");
    for (int c = 0; c < kNumFields; ++c) {
      if (blocks[r][c].rows() != sizes[r] || blocks[r][c].cols() != sizes[c])
        throw std::logic_error("block (" + std::to_string(r) + "," + std::to_string(c) + ") has inconsistent shape");
      blocks[r][c].validate();
    }
  }
}

BlockSystem assemble(Formulation f, const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                     const AssemblyOptions& options) {
  switch (f) {
    case Formulation::Hdiv: return assemble_hdiv(mesh, params, bcs, options);
    case Formulation::CgVms: return assemble_cgvms(mesh, params, bcs, options);
    case Formulation::DgVms: return assemble_dgvms(mesh, params, bcs, options);
  }
  throw std::invalid_argument("unknown formulation");
}

bool DirichletSet::empty() const {
  return std::all_of(values.begin(), values.end(), [](const auto& v) { return v.empty(); });
}

void apply_dirichlet(BlockSystem& sys, const DirichletSet& cs) {
  if (cs.empty()) return;
  std::array<std::vector<int>, kNumFields> rows;
  std::array<linalg::Vector, kNumFields> g;
  for (int j = 0; j < kNumFields; ++j) {
    g[j].assign(sys.sizes[j], 0.0);
    for (const auto& [dof, val] : cs.values[j]) {
      if (dof < 0 || dof >= sys.sizes[j]) throw std::out_of_range("constrained DoF out of range");
      g[j][dof] = val;
      rows[j].push_back(dof);
    }
    std::sort(rows[j].begin(), rows[j].end());
    rows[j].erase(std::unique(rows[j].begin(), rows[j].end()), rows[j].end());
  }
  // move known values to the right-hand side
  for (int i = 0; i < kNumFields; ++i)
    for (int j = 0; j < kNumFields; ++j)
      if (!rows[j].empty() && sys.blocks[i][j].nnz() > 0) sys.blocks[i][j].multiply_add(-1.0, g[j], sys.rhs[i]);
  std::array<linalg::Vector, kNumFields> diag;
  for (int j = 0; j < kNumFields; ++j) {
    diag[j].resize(rows[j].size());
    for (std::size_t k = 0; k < rows[j].size(); ++k) diag[j][k] = sys.blocks[j][j].at(rows[j][k], rows[j][k]);
  }
  for (int j = 0; j < kNumFields; ++j) {
    if (rows[j].empty()) continue;
    for (int i = 0; i < kNumFields; ++i) {
      sys.blocks[i][j].zero_columns(rows[j]);
      sys.blocks[j][i].zero_rows(rows[j]);
    }
  }
  for (int j = 0; j < kNumFields; ++j)
    for (std::size_t k = 0; k < rows[j].size(); ++k) {
      const int dof = rows[j][k];
      const int pos = sys.blocks[j][j].find(dof, dof);
      if (pos < 0) throw std::logic_error("constrained DoF has no diagonal entry");
      const double d = diag[j][k] != 0.0 ? diag[j][k] : 1.0;
      sys.blocks[j][j].values()[pos] = d;
      sys.rhs[j][dof] = d * g[j][dof];
    }
}

MonolithicSystem monolithic_view(const BlockSystem& sys) {
  MonolithicSystem m;
  for (int i = 0; i < kNumFields; ++i) m.offsets[i + 1] = m.offsets[i] + sys.sizes[i];
  const int n = m.offsets[kNumFields];
  std::vector<int> ptr(n + 1, 0), idx;
  std::vector<double> val;
  std::size_t nnz = 0;
  for (const auto& row : sys.blocks)
    for (const auto& b : row) nnz += b.nnz();
  idx.reserve(nnz);
  val.reserve(nnz);
  m.rhs.reserve(n);
  for (int i = 0; i < kNumFields; ++i) {
    for (int r = 0; r < sys.sizes[i]; ++r) {
      for (int j = 0; j < kNumFields; ++j) {
        const auto& b = sys.blocks[i][j];
        for (int k = b.row_ptr()[r]; k < b.row_ptr()[r + 1]; ++k) {
          idx.push_back(m.offsets[j] + b.col_idx()[k]);
          val.push_back(b.values()[k]);
        }
      }
      ptr[m.offsets[i] + r + 1] = static_cast<int>(idx.size());
    }
    m.rhs.insert(m.rhs.end(), sys.rhs[i].begin(), sys.rhs[i].end());
  }
  m.matrix = linalg::CsrMatrix(n, n, std::move(ptr), std::move(idx), std::move(val));
  return m;
}

linalg::Vector block_multiply(const BlockSystem& sys, std::span<const double> x) {
  const auto parts = split_fields(sys, x);
  std::array<linalg::Vector, kNumFields> y;
  for (int i = 0; i < kNumFields; ++i) {
    y[i].assign(sys.sizes[i], 0.0);
    for (int j = 0; j < kNumFields; ++j) sys.blocks[i][j].multiply_add(1.0, parts[j], y[i]);
  }
  return join_fields(sys, y);
}

std::array<linalg::Vector, kNumFields> split_fields(const BlockSystem& sys, std::span<const double> x) {
  if (static_cast<int>(x.size()) != sys.total_size()) throw std::invalid_argument("vector size does not match system");
  std::array<linalg::Vector, kNumFields> out;
  int o = 0;
  for (int i = 0; i < kNumFields; ++i) {
    out[i].assign(x.begin() + o, x.begin() + o + sys.sizes[i]);
    o += sys.sizes[i];
  }
  return out;
}

linalg::Vector join_fields(const BlockSystem& sys, const std::array<linalg::Vector, kNumFields>& fields) {
  linalg::Vector x;
  x.reserve(sys.total_size());
  for (int i = 0; i < kNumFields; ++i) {
    if (static_cast<int>(fields[i].size()) != sys.sizes[i]) throw std::invalid_argument("field size mismatch");
    x.insert(x.end(), fields[i].begin(), fields[i].end());
  }
  return x;
}

void export_matrix_market(const BlockSystem& sys, const std::string& prefix) {
  const MonolithicSystem m = monolithic_view(sys);
  linalg::save_matrix_market(prefix + "_K.mtx", m.matrix);
  linalg::save_matrix_market(prefix + "_f.mtx", m.rhs);
}

}  // namespace dpp
