#include "dpp/fe_field.hpp"

#include <cmath>
#include <stdexcept>

#include "dpp/elements.hpp"

namespace dpp {

namespace {

int expected_size(const Mesh& mesh, Formulation f, Field field) {
  const int d = mesh.dim();
  const int comps = is_velocity(field) ? d : 1;
  switch (f) {
    case Formulation::Hdiv: return is_velocity(field) ? mesh.n_facets() : mesh.n_cells();
    case Formulation::CgVms: return comps * mesh.n_vertices();
    case Formulation::DgVms: return comps * mesh.n_cells() * vertices_per_cell(mesh.cell_kind());
  }
  return 0;
}

double sign_of(const Mesh& m, int cell, int local) {
  return m.facet(m.cell_facet(cell, local)).plus_cell == cell ? 1.0 : -1.0;
}

}  // namespace

Vec3 evaluate_field(const Mesh& mesh, Formulation formulation, Field field, std::span<const double> coeffs, int cell,
                    const Vec3& xi) {
  if (static_cast<int>(coeffs.size()) != expected_size(mesh, formulation, field))
    throw std::invalid_argument("coefficient vector does not match the field space");
  const CellKind kind = mesh.cell_kind();
  const int d = mesh.dim();
  Vec3 out{};
  if (formulation == Formulation::Hdiv) {
    if (!is_velocity(field)) {
      out[0] = coeffs[cell];
      return out;
    }
    const CellGeometry g = cell_geometry(mesh, cell);
    const VectorBasis b = piola_map(g, eval_vector_basis(hdiv_family(kind), kind, xi));
    for (int i = 0; i < b.count; ++i) out = out + (sign_of(mesh, cell, i) * coeffs[mesh.cell_facet(cell, i)]) * b.value[i];
    return out;
  }
  const ScalarBasis b = eval_scalar_basis(nodal_family(kind), kind, xi);
  const auto verts = mesh.cell(cell);
  for (int a = 0; a < b.count; ++a) {
    const int node = formulation == Formulation::CgVms ? verts[a] : cell * b.count + a;
    if (is_velocity(field))
      for (int c = 0; c < d; ++c) out[c] += b.value[a] * coeffs[node * d + c];
    else
      out[0] += b.value[a] * coeffs[node];
  }
  return out;
}

std::function<Vec3(const Vec3&)> exact_component(const ManufacturedSolution& mms, Field field) {
  return [mms, field](const Vec3& x) -> Vec3 {
    const ExactFields f = mms(x);
    switch (field) {
      case Field::U1: return f.u1;
      case Field::P1: return {f.p1, 0.0, 0.0};
      case Field::U2: return f.u2;
      case Field::P2: return {f.p2, 0.0, 0.0};
    }
    return {};
  };
}

FieldVectors interpolate_exact(const Mesh& mesh, Formulation formulation, const ManufacturedSolution& mms,
                               int quadrature_degree) {
  const int d = mesh.dim();
  const CellKind kind = mesh.cell_kind();
  FieldVectors out;
  for (int f = 0; f < kNumFields; ++f) out[f].assign(expected_size(mesh, formulation, Field(f)), 0.0);
  if (formulation == Formulation::Hdiv) {
    for (int f = 0; f < mesh.n_facets(); ++f) {
      const FacetRecord& rec = mesh.facet(f);
      const FacetQuadrature q = facet_quadrature(mesh, f, quadrature_degree);
      for (std::size_t k = 0; k < q.points.size(); ++k) {
        const ExactFields e = mms(q.points[k]);
        out[0][f] += q.weights[k] * dot(e.u1, rec.normal);
        out[2][f] += q.weights[k] * dot(e.u2, rec.normal);
      }
    }
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const CellGeometry g = cell_geometry(mesh, c);
      const CellQuadrature q = cell_quadrature(g, kind, quadrature_degree);
      double p1 = 0.0, p2 = 0.0, vol = 0.0;
      for (std::size_t k = 0; k < q.points.size(); ++k) {
        const ExactFields e = mms(q.points[k]);
        p1 += q.weights[k] * e.p1;
        p2 += q.weights[k] * e.p2;
        vol += q.weights[k];
      }
      out[1][c] = p1 / vol;
      out[3][c] = p2 / vol;
    }
    return out;
  }
  auto put = [&](int node, const Vec3& x) {
    const ExactFields e = mms(x);
    for (int c = 0; c < d; ++c) {
      out[0][node * d + c] = e.u1[c];
      out[2][node * d + c] = e.u2[c];
    }
    out[1][node] = e.p1;
    out[3][node] = e.p2;
  };
  if (formulation == Formulation::CgVms) {
    for (int v = 0; v < mesh.n_vertices(); ++v) put(v, mesh.vertex(v));
  } else {
    const int nv = vertices_per_cell(kind);
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const auto verts = mesh.cell(c);
      for (int a = 0; a < nv; ++a) put(c * nv + a, mesh.vertex(verts[a]));
    }
  }
  return out;
}

double l2_error(const Mesh& mesh, Formulation formulation, Field field, std::span<const double> coeffs,
                const std::function<Vec3(const Vec3&)>& exact, int quadrature_degree) {
  const CellKind kind = mesh.cell_kind();
  double sum = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    const CellQuadrature q = cell_quadrature(g, kind, quadrature_degree);
    for (std::size_t k = 0; k < q.points.size(); ++k) {
      const Vec3 diff = evaluate_field(mesh, formulation, field, coeffs, c, q.ref_points[k]) - exact(q.points[k]);
      sum += q.weights[k] * dot(diff, diff);
    }
  }
  return std::sqrt(sum);
}

std::array<double, kNumFields> l2_errors(const Mesh& mesh, Formulation formulation, const FieldVectors& fields,
                                         const ManufacturedSolution& mms, int quadrature_degree) {
  std::array<double, kNumFields> e{};
  for (int f = 0; f < kNumFields; ++f)
    e[f] = l2_error(mesh, formulation, Field(f), fields[f], exact_component(mms, Field(f)), quadrature_degree);
  return e;
}

std::vector<double> hdiv_cell_mass_balance(const Mesh& mesh, const DppParameters& params, const FieldVectors& fields,
                                           int network) {
  if (network != 0 && network != 1) throw std::invalid_argument("network must be 0 or 1");
  const auto& u = fields[int(velocity_field(network))];
  const auto& pa = fields[int(pressure_field(network))];
  const auto& pb = fields[int(pressure_field(1 - network))];
  if (static_cast<int>(u.size()) != mesh.n_facets() || static_cast<int>(pa.size()) != mesh.n_cells() ||
      static_cast<int>(pb.size()) != mesh.n_cells())
    throw std::invalid_argument("fields are not H(div) coefficient vectors for this mesh");
  const int nf = facets_per_cell(mesh.cell_kind());
  std::vector<double> out(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    // divergence theorem: the integral of div u is the net outward flux
    double flux = 0.0;
    for (int i = 0; i < nf; ++i) flux += sign_of(mesh, c, i) * u[mesh.cell_facet(c, i)];
    out[c] = flux + params.beta / params.mu * (pa[c] - pb[c]) * cell_geometry(mesh, c).volume;
  }
  return out;
}

}  // namespace dpp
