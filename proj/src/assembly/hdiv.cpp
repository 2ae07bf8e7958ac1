#include <stdexcept>

#include "detail.hpp"
#include "dpp/timer.hpp"

namespace dpp {

BlockSystem assemble_hdiv(const Mesh& mesh, const DppParameters& params, const BoundarySpec& bcs,
                          const AssemblyOptions& opt) {
  params.validate();
  bcs.validate(mesh);
  Stopwatch clock;
  const CellKind kind = mesh.cell_kind();
  const int nf = facets_per_cell(kind);

  BlockSystem sys;
  sys.formulation = Formulation::Hdiv;
  sys.cell_kind = kind;
  sys.n_div = mesh.n_div();
  sys.sizes = {mesh.n_facets(), mesh.n_cells(), mesh.n_facets(), mesh.n_cells()};

  const double bm = params.beta / params.mu;
  std::vector<detail::Sink> sinks;
  detail::run_chunks(mesh.n_cells(), opt.workers, sinks, [&](int begin, int end, detail::Sink& s) {
    for (int c = begin; c < end; ++c) {
      const CellGeometry g = cell_geometry(mesh, c);
      const CellQuadrature q = cell_quadrature(g, kind, opt.quadrature_degree);
      double mass[kMaxLocalDofs][kMaxLocalDofs] = {};
      double divint[kMaxLocalDofs] = {};
      double load[kMaxLocalDofs] = {};
      for (std::size_t k = 0; k < q.points.size(); ++k) {
        const VectorBasis b = detail::hdiv_basis_at(g, kind, q.ref_points[k]);
        const double w = q.weights[k];
        for (int i = 0; i < nf; ++i) {
          divint[i] += w * b.div[i];
          load[i] += w * dot(b.value[i], params.gamma_b);
          for (int j = 0; j < nf; ++j) mass[i][j] += w * dot(b.value[i], b.value[j]);
        }
      }
      int dof[kMaxLocalDofs];
      double sgn[kMaxLocalDofs];
      for (int i = 0; i < nf; ++i) {
        dof[i] = mesh.cell_facet(c, i);
        sgn[i] = detail::flux_sign(mesh, c, i);
      }
      for (int net = 0; net < 2; ++net) {
        const Field U = velocity_field(net), P = pressure_field(net);
        const double mk = params.mu / params.permeability(net);
        for (int i = 0; i < nf; ++i) {
          for (int j = 0; j < nf; ++j) s.add(U, U, dof[i], dof[j], mk * sgn[i] * sgn[j] * mass[i][j]);
          s.add(U, P, dof[i], c, -sgn[i] * divint[i]);
          s.add(P, U, c, dof[i], sgn[i] * divint[i]);
          s.rhs(U, dof[i], sgn[i] * load[i]);
        }
        s.add(P, P, c, c, bm * g.volume);
        s.rhs(P, c, 0.0);
      }
      s.add(Field::P1, Field::P2, c, c, -bm * g.volume);
      s.add(Field::P2, Field::P1, c, c, -bm * g.volume);
    }
  });

  // pressure boundary functional -(w.n; p0) on the pressure region
  DirichletSet flux_constraints;
  detail::run_chunks(mesh.n_facets(), opt.workers, sinks, [&](int begin, int end, detail::Sink& s) {
    for (int f = begin; f < end; ++f) {
      const FacetRecord& rec = mesh.facet(f);
      if (!rec.is_boundary()) continue;
      bool any_p = false;
      for (int net = 0; net < 2; ++net) any_p |= bcs.network[net].facet_kind[f] == BoundaryKind::Pressure;
      if (!any_p) continue;
      const CellGeometry g = cell_geometry(mesh, rec.plus_cell);
      const FacetQuadrature fq = facet_quadrature(mesh, f, opt.boundary_degree);
      for (int net = 0; net < 2; ++net) {
        const auto& nb = bcs.network[net];
        if (nb.facet_kind[f] != BoundaryKind::Pressure) continue;
        double v = 0.0;
        for (std::size_t k = 0; k < fq.points.size(); ++k) {
          const VectorBasis b = detail::hdiv_basis_at(g, kind, g.pull_back(fq.points[k]));
          v += fq.weights[k] * dot(b.value[rec.plus_local], rec.normal) * nb.pressure(fq.points[k]);
        }
        s.rhs(velocity_field(net), f, -v);
      }
    }
  });

  for (int net = 0; net < 2; ++net) {
    const auto& nb = bcs.network[net];
    for (int f = 0; f < mesh.n_facets(); ++f) {
      const FacetRecord& rec = mesh.facet(f);
      if (!rec.is_boundary() || nb.facet_kind[f] != BoundaryKind::Velocity) continue;
      const FacetQuadrature fq = facet_quadrature(mesh, f, opt.boundary_degree);
      double flux = 0.0;
      for (std::size_t k = 0; k < fq.points.size(); ++k) flux += fq.weights[k] * nb.normal_velocity(fq.points[k], rec.normal);
      flux_constraints.values[int(velocity_field(net))].push_back({f, flux});
    }
  }

  detail::finalize(sys, sinks);
  apply_dirichlet(sys, flux_constraints);
  sys.stats.seconds = clock.seconds();
  return sys;
}

}  // namespace dpp
