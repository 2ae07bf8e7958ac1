#include <cmath>
#include <stdexcept>

#include "detail.hpp"
#include "dpp/timer.hpp"

namespace dpp {

namespace {

constexpr int kMaxNodes = 8;

// Integrals of products of nodal basis functions on one cell.
struct NodalCell {
  int nv = 0;
  double mass[kMaxNodes][kMaxNodes] = {};
  double lap[kMaxNodes][kMaxNodes] = {};
  // coupling[c][a][b] = -(d_c phi_a, phi_b) - 1/2 (phi_a, d_c phi_b)
  double coupling[3][kMaxNodes][kMaxNodes] = {};
  double integral[kMaxNodes] = {};
  Vec3 grad_integral[kMaxNodes] = {};
};

NodalCell nodal_cell(const CellGeometry& g, CellKind kind, int degree) {
  NodalCell nc;
  nc.nv = vertices_per_cell(kind);
  const int d = g.dim;
  const CellQuadrature q = cell_quadrature(g, kind, degree);
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const ScalarBasis b = detail::nodal_basis_at(g, kind, q.ref_points[k]);
    const double w = q.weights[k];
    for (int a = 0; a < nc.nv; ++a) {
      nc.integral[a] += w * b.value[a];
      nc.grad_integral[a] = nc.grad_integral[a] + w * b.grad[a];
      for (int bb = 0; bb < nc.nv; ++bb) {
        nc.mass[a][bb] += w * b.value[a] * b.value[bb];
        nc.lap[a][bb] += w * dot(b.grad[a], b.grad[bb]);
        for (int c = 0; c < d; ++c)
          nc.coupling[c][a][bb] += w * (-b.grad[a][c] * b.value[bb] - 0.5 * b.value[a] * b.grad[bb][c]);
      }
    }
  }
  return nc;
}

// Cell terms shared by CG-VMS and DG-VMS. node[a] is the scalar DoF of local
// node a; velocity component c of that node is node[a] * dim + c.
void emit_cell(detail::Sink& s, const NodalCell& nc, int dim, const int* node, const DppParameters& p) {
  const double bm = p.beta / p.mu;
  for (int net = 0; net < 2; ++net) {
    const Field U = velocity_field(net), P = pressure_field(net);
    const double k = p.permeability(net);
    const double mk = p.mu / k, km = k / p.mu;
    for (int a = 0; a < nc.nv; ++a) {
      for (int b = 0; b < nc.nv; ++b) {
        for (int c = 0; c < dim; ++c) {
          s.add(U, U, node[a] * dim + c, node[b] * dim + c, 0.5 * mk * nc.mass[a][b]);
          s.add(U, P, node[a] * dim + c, node[b], nc.coupling[c][a][b]);
          s.add(P, U, node[b], node[a] * dim + c, -nc.coupling[c][a][b]);
        }
        s.add(P, P, node[a], node[b], 0.5 * km * nc.lap[a][b] + bm * nc.mass[a][b]);
      }
      for (int c = 0; c < dim; ++c) s.rhs(U, node[a] * dim + c, 0.5 * nc.integral[a] * p.gamma_b[c]);
      s.rhs(P, node[a], 0.5 * km * dot(nc.grad_integral[a], p.gamma_b));
    }
  }
  for (int a = 0; a < nc.nv; ++a)
    for (int b = 0; b < nc.nv; ++b) {
      s.add(Field::P1, Field::P2, node[a], node[b], -bm * nc.mass[a][b]);
      s.add(Field::P2, Field::P1, node[a], node[b], -bm * nc.mass[a][b]);
    }
}

// -(w.n; p0) on pressure-region facets and, for DG, the velocity-region terms.
void emit_boundary_facet(detail::Sink& s, const Mesh& mesh, int f, const int* node, const BoundarySpec& bcs,
                         int degree, bool weak_velocity) {
  const FacetRecord& rec = mesh.facet(f);
  const CellKind kind = mesh.cell_kind();
  const int dim = mesh.dim();
  const int nv = vertices_per_cell(kind);
  const CellGeometry g = cell_geometry(mesh, rec.plus_cell);
  const FacetQuadrature fq = facet_quadrature(mesh, f, degree);
  const Vec3& n = rec.normal;
  for (int net = 0; net < 2; ++net) {
    const auto& nb = bcs.network[net];
    const Field U = velocity_field(net), P = pressure_field(net);
    const bool pressure = nb.facet_kind[f] == BoundaryKind::Pressure;
    if (!pressure && !weak_velocity) continue;
    for (std::size_t k = 0; k < fq.points.size(); ++k) {
      const ScalarBasis b = detail::nodal_basis_at(g, kind, g.pull_back(fq.points[k]));
      const double w = fq.weights[k];
      if (pressure) {
        const double p0 = nb.pressure(fq.points[k]);
        for (int a = 0; a < nv; ++a)
          for (int c = 0; c < dim; ++c) s.rhs(U, node[a] * dim + c, -w * b.value[a] * n[c] * p0);
      } else {
        const double un = nb.normal_velocity(fq.points[k], n);
        for (int a = 0; a < nv; ++a) {
          for (int bb = 0; bb < nv; ++bb)
            for (int c = 0; c < dim; ++c) {
              const double v = w * b.value[a] * n[c] * b.value[bb];
              s.add(U, P, node[a] * dim + c, node[bb], v);
              s.add(P, U, node[bb], node[a] * dim + c, -v);
            }
          s.rhs(P, node[a], -w * b.value[a] * un);
        }
      }
    }
  }
}

// Interior facet couplings of DG-VMS: averages/jumps and both penalties.
// With penalty_only, only the penalty terms are emitted.
void emit_interior_facet(detail::Sink& s, const Mesh& mesh, int f, const DppParameters& p, int degree,
                         bool penalty_only, int only_network = -1) {
  const FacetRecord& rec = mesh.facet(f);
  const CellKind kind = mesh.cell_kind();
  const int dim = mesh.dim();
  const int nv = vertices_per_cell(kind);
  const double h = mesh.h();
  const int cells[2] = {rec.plus_cell, rec.minus_cell};
  const double sgn[2] = {1.0, -1.0};
  const CellGeometry g[2] = {cell_geometry(mesh, cells[0]), cell_geometry(mesh, cells[1])};
  const FacetQuadrature fq = facet_quadrature(mesh, f, degree);
  const Vec3& n = rec.normal;
  for (std::size_t k = 0; k < fq.points.size(); ++k) {
    ScalarBasis b[2];
    for (int side = 0; side < 2; ++side) b[side] = detail::nodal_basis_at(g[side], kind, g[side].pull_back(fq.points[k]));
    const double w = fq.weights[k];
    for (int net = 0; net < 2; ++net) {
      if (only_network >= 0 && net != only_network) continue;
      const Field U = velocity_field(net), P = pressure_field(net);
      const double kk = p.permeability(net);
      const double pu = p.eta_u * h * p.mu / kk;
      const double pp = p.eta_p / h * kk / p.mu;
      for (int si = 0; si < 2; ++si)
        for (int a = 0; a < nv; ++a) {
          const int ia = cells[si] * nv + a;
          const double ja = sgn[si] * b[si].value[a];  // scalar jump factor
          for (int sj = 0; sj < 2; ++sj)
            for (int bb = 0; bb < nv; ++bb) {
              const int jb = cells[sj] * nv + bb;
              const double jbv = sgn[sj] * b[sj].value[bb];
              const double avg = 0.5 * b[sj].value[bb];
              s.add(P, P, ia, jb, w * pp * ja * jbv);
              for (int c = 0; c < dim; ++c) {
                for (int c2 = 0; c2 < dim; ++c2)
                  s.add(U, U, ia * dim + c, jb * dim + c2, w * pu * ja * n[c] * jbv * n[c2]);
                if (penalty_only) continue;
                // ([[w]]; {p}) and -({q}; [[u]])
                s.add(U, P, ia * dim + c, jb, w * ja * n[c] * avg);
                s.add(P, U, jb, ia * dim + c, -w * ja * n[c] * avg);
              }
            }
        }
    }
  }
}

void check_nodal(const Mesh& mesh) {
  if (mesh.dim() != cell_dim(mesh.cell_kind())) throw std::invalid_argument("mesh dimension and cell kind disagree");
}

}  // namespace

DirichletSet cg_dirichlet_set(const Mesh& mesh, const BoundarySpec& bcs, bool include_pressure) {
  DirichletSet ds;
  const int dim = mesh.dim();
  for (int net = 0; net < 2; ++net) {
    const auto& nb = bcs.network[net];
    std::vector<char> p_node(mesh.n_vertices(), 0);
    std::vector<char> u_node(static_cast<std::size_t>(mesh.n_vertices()) * dim, 0);
    for (int f = 0; f < mesh.n_facets(); ++f) {
      const FacetRecord& rec = mesh.facet(f);
      if (!rec.is_boundary()) continue;
      if (nb.facet_kind[f] == BoundaryKind::Pressure) {
        if (!include_pressure) continue;
        for (int v : rec.vertex_span())
          if (!p_node[v]) {
            p_node[v] = 1;
            ds.values[int(pressure_field(net))].push_back({v, nb.pressure(mesh.vertex(v))});
          }
      } else {
        int axis = -1;
        for (int c = 0; c < dim; ++c)
          if (std::abs(std::abs(rec.normal[c]) - 1.0) < 1e-12) axis = c;
        if (axis < 0) throw std::invalid_argument("CG-VMS velocity region must lie on axis-aligned facets");
        for (int v : rec.vertex_span()) {
          const int dof = v * dim + axis;
          if (u_node[dof]) continue;
          u_node[dof] = 1;
          ds.values[int(velocity_field(net))].push_back(
              {dof, nb.normal_velocity(mesh.vertex(v), rec.normal) * rec.normal[axis]});
        }
      }
    }
  }
  return ds;
}

BlockSystem assemble_cgvms(const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                           const AssemblyOptions& opt) {
  params.validate();
  bcs.validate(mesh);
  check_nodal(mesh);
  Stopwatch clock;
  const CellKind kind = mesh.cell_kind();
  const int dim = mesh.dim();
  const int nv = vertices_per_cell(kind);

  BlockSystem sys;
  sys.formulation = Formulation::CgVms;
  sys.cell_kind = kind;
  sys.n_div = mesh.n_div();
  sys.sizes = {mesh.n_vertices() * dim, mesh.n_vertices(), mesh.n_vertices() * dim, mesh.n_vertices()};

  std::vector<detail::Sink> sinks;
  detail::run_chunks(mesh.n_cells(), opt.workers, sinks, [&](int begin, int end, detail::Sink& s) {
    int node[kMaxNodes];
    for (int c = begin; c < end; ++c) {
      const auto verts = mesh.cell(c);
      for (int a = 0; a < nv; ++a) node[a] = verts[a];
      emit_cell(s, nodal_cell(cell_geometry(mesh, c), kind, opt.quadrature_degree), dim, node, params);
    }
  });
  detail::run_chunks(mesh.n_facets(), opt.workers, sinks, [&](int begin, int end, detail::Sink& s) {
    int node[kMaxNodes];
    for (int f = begin; f < end; ++f) {
      const FacetRecord& rec = mesh.facet(f);
      if (!rec.is_boundary()) continue;
      const auto verts = mesh.cell(rec.plus_cell);
      for (int a = 0; a < nv; ++a) node[a] = verts[a];
      emit_boundary_facet(s, mesh, f, node, bcs, opt.boundary_degree, false);
    }
  });
  detail::finalize(sys, sinks);
  const DirichletSet ds = cg_dirichlet_set(mesh, bcs, opt.strong_pressure);
  if (!ds.empty()) apply_dirichlet(sys, ds);
  sys.stats.seconds = clock.seconds();
  return sys;
}

BlockSystem assemble_dgvms(const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                           const AssemblyOptions& opt) {
  params.validate();
  bcs.validate(mesh);
  check_nodal(mesh);
  Stopwatch clock;
  const CellKind kind = mesh.cell_kind();
  const int dim = mesh.dim();
  const int nv = vertices_per_cell(kind);
  const int ndof = mesh.n_cells() * nv;

  BlockSystem sys;
  sys.formulation = Formulation::DgVms;
  sys.cell_kind = kind;
  sys.n_div = mesh.n_div();
  sys.sizes = {ndof * dim, ndof, ndof * dim, ndof};

  std::vector<detail::Sink> sinks;
  detail::run_chunks(mesh.n_cells(), opt.workers, sinks, [&](int begin, int end, detail::Sink& s) {
    int node[kMaxNodes];
    for (int c = begin; c < end; ++c) {
      for (int a = 0; a < nv; ++a) node[a] = c * nv + a;
      emit_cell(s, nodal_cell(cell_geometry(mesh, c), kind, opt.quadrature_degree), dim, node, params);
    }
  });
  detail::run_chunks(mesh.n_facets(), opt.workers, sinks, [&](int begin, int end, detail::Sink& s) {
    int node[kMaxNodes];
    for (int f = begin; f < end; ++f) {
      const FacetRecord& rec = mesh.facet(f);
      if (rec.is_boundary()) {
        for (int a = 0; a < nv; ++a) node[a] = rec.plus_cell * nv + a;
        emit_boundary_facet(s, mesh, f, node, bcs, opt.boundary_degree, true);
      } else {
        emit_interior_facet(s, mesh, f, params, opt.quadrature_degree, false);
      }
    }
  });
  detail::finalize(sys, sinks);
  sys.stats.seconds = clock.seconds();
  return sys;
}

JumpPenalty dg_jump_penalty(const Mesh& mesh, const DppParameters& params, int network) {
  params.validate();
  if (network != 0 && network != 1) throw std::invalid_argument("network must be 0 or 1");
  const CellKind kind = mesh.cell_kind();
  const int dim = mesh.dim();
  const int nv = vertices_per_cell(kind);
  const int ndof = mesh.n_cells() * nv;
  const double k = params.permeability(network);
  const double h = mesh.h();
  const double pu = params.eta_u * h * params.mu / k;
  const double pp = params.eta_p / h * k / params.mu;

  std::vector<detail::Sink> sinks;
  detail::run_chunks(mesh.n_facets(), 1, sinks, [&](int begin, int end, detail::Sink& s) {
    for (int f = begin; f < end; ++f)
      if (!mesh.facet(f).is_boundary()) emit_interior_facet(s, mesh, f, params, 2, true, network);
  });
  const Field U = velocity_field(network), P = pressure_field(network);
  JumpPenalty jp;
  jp.uu = linalg::CsrMatrix::from_triplets(ndof * dim, ndof * dim, sinks.front().mat[int(U)][int(U)]);
  jp.pp = linalg::CsrMatrix::from_triplets(ndof, ndof, sinks.front().mat[int(P)][int(P)]);

  std::vector<linalg::Triplet> ju, jpp;
  int row = 0;
  for (int f = 0; f < mesh.n_facets(); ++f) {
    const FacetRecord& rec = mesh.facet(f);
    if (rec.is_boundary()) continue;
    const int cells[2] = {rec.plus_cell, rec.minus_cell};
    const CellGeometry g[2] = {cell_geometry(mesh, cells[0]), cell_geometry(mesh, cells[1])};
    const FacetQuadrature fq = facet_quadrature(mesh, f, 2);
    for (std::size_t q = 0; q < fq.points.size(); ++q, ++row) {
      for (int side = 0; side < 2; ++side) {
        const double sgn = side == 0 ? 1.0 : -1.0;
        const ScalarBasis b = detail::nodal_basis_at(g[side], kind, g[side].pull_back(fq.points[q]));
        for (int a = 0; a < nv; ++a) {
          const int node = cells[side] * nv + a;
          jpp.push_back({row, node, sgn * b.value[a]});
          for (int c = 0; c < dim; ++c) ju.push_back({row, node * dim + c, sgn * b.value[a] * rec.normal[c]});
        }
      }
      jp.weight_u.push_back(fq.weights[q] * pu);
      jp.weight_p.push_back(fq.weights[q] * pp);
    }
  }
  jp.jump_u = linalg::CsrMatrix::from_triplets(row, ndof * dim, ju);
  jp.jump_p = linalg::CsrMatrix::from_triplets(row, ndof, jpp);
  return jp;
}

namespace {

double weighted_square(const linalg::CsrMatrix& j, const linalg::Vector& w, std::span<const double> x) {
  const linalg::Vector jx = j * x;
  double e = 0.0;
  for (std::size_t i = 0; i < jx.size(); ++i) e += w[i] * jx[i] * jx[i];
  return e;
}

}  // namespace

double JumpPenalty::energy_u(std::span<const double> u) const { return weighted_square(jump_u, weight_u, u); }
double JumpPenalty::energy_p(std::span<const double> p) const { return weighted_square(jump_p, weight_p, p); }

}  // namespace dpp
