#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dpp/assembly.hpp"
#include "dpp/elements.hpp"
#include "dpp/experiment.hpp"
#include "dpp/fe_field.hpp"
#include "dpp/plots.hpp"
#include "dpp/solver/solve.hpp"
#include "dpp/spectrum.hpp"

namespace py = pybind11;
using namespace dpp;

namespace {

py::array_t<double> to_numpy(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }
py::array_t<int> to_numpy(const std::vector<int>& v) { return py::array_t<int>(v.size(), v.data()); }

DppParameters params_for(int dim, const std::optional<DppParameters>& p) {
  if (p) return *p;
  return dim == 2 ? DppParameters::benchmark_2d() : DppParameters::benchmark_3d();
}

struct Problem {
  Mesh mesh;
  Formulation formulation;
  DppParameters params;
  ManufacturedSolution mms;
  BlockSystem system;
};

Problem build(const std::string& formulation, const std::string& cell, int n_div, const std::optional<DppParameters>& p,
              double constant_pressure) {
  const CellKind kind = parse_cell_kind(cell);
  const int dim = cell_dim(kind);
  Problem out{generate_unit_mesh(dim, kind, n_div), parse_formulation(formulation), params_for(dim, p),
              constant_pressure_solution(dim, 0.0, DppParameters{}), {}};
  out.mms = std::isnan(constant_pressure) ? benchmark_solution(dim, out.params)
                                          : constant_pressure_solution(dim, constant_pressure, out.params);
  out.system = assemble(out.formulation, out.mesh, out.params, boundary_data(out.mms, out.mesh));
  return out;
}

py::dict record_dict(const tas::SpectrumRecord& r) {
  py::dict d;
  d["formulation"] = to_string(r.formulation);
  d["cell"] = to_string(r.cell);
  d["ndiv"] = r.n_div;
  d["dof"] = r.dof;
  d["ksp"] = r.ksp;
  d["assembly_s"] = r.assembly_s;
  d["solve_s"] = r.solve_s;
  d["total_s"] = r.total_s;
  d["l2"] = r.l2;
  d["doa"] = r.doa;
  d["dos"] = r.dos;
  d["doe"] = r.doe;
  d["dof_per_s_total"] = r.dof_per_s_total;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dpp_tas, m) {
  m.doc() = "Double porosity/permeability solvers and performance-spectrum metrics";

  py::class_<DppParameters>(m, "Parameters")
      .def(py::init<>())
      .def_readwrite("mu", &DppParameters::mu)
      .def_readwrite("beta", &DppParameters::beta)
      .def_readwrite("k1", &DppParameters::k1)
      .def_readwrite("k2", &DppParameters::k2)
      .def_readwrite("eta_u", &DppParameters::eta_u)
      .def_readwrite("eta_p", &DppParameters::eta_p)
      .def_readwrite("L", &DppParameters::L)
      .def_readwrite("gamma_b", &DppParameters::gamma_b)
      .def_static("benchmark_2d", &DppParameters::benchmark_2d)
      .def_static("benchmark_3d", &DppParameters::benchmark_3d)
      .def_static("resolve", &resolve_parameters, py::arg("name_or_path"));

  m.def("eta", &eta, py::arg("params"));
  m.def("dof_count", py::overload_cast<Formulation, CellKind, int>(&dof_count), py::arg("formulation"),
        py::arg("cell"), py::arg("n_div"));
  m.def(
      "dof_count",
      [](const std::string& f, const std::string& c, int n) {
        return dof_count(parse_formulation(f), parse_cell_kind(c), n);
      },
      py::arg("formulation"), py::arg("cell"), py::arg("n_div"));

  py::enum_<Formulation>(m, "Formulation")
      .value("HDIV", Formulation::Hdiv)
      .value("CGVMS", Formulation::CgVms)
      .value("DGVMS", Formulation::DgVms);
  py::enum_<CellKind>(m, "CellKind")
      .value("TRI", CellKind::Tri)
      .value("QUAD", CellKind::Quad)
      .value("TET", CellKind::Tet)
      .value("HEX", CellKind::Hex);

  m.def(
      "mesh_info",
      [](const std::string& cell, int n_div) {
        const CellKind kind = parse_cell_kind(cell);
        const Mesh mesh = generate_unit_mesh(cell_dim(kind), kind, n_div);
        py::dict d;
        d["vertices"] = mesh.n_vertices();
        d["cells"] = mesh.n_cells();
        d["facets"] = mesh.n_facets();
        d["boundary_facets"] = mesh.n_boundary_facets();
        return d;
      },
      py::arg("cell"), py::arg("n_div"));

  m.def(
      "assemble",
      [](const std::string& formulation, const std::string& cell, int n_div, std::optional<DppParameters> params) {
        const Problem p = build(formulation, cell, n_div, params, std::nan(""));
        const MonolithicSystem mono = monolithic_view(p.system);
        py::dict d;
        d["indptr"] = to_numpy(mono.matrix.row_ptr());
        d["indices"] = to_numpy(mono.matrix.col_idx());
        d["data"] = to_numpy(mono.matrix.values());
        d["shape"] = py::make_tuple(mono.matrix.rows(), mono.matrix.cols());
        d["rhs"] = to_numpy(mono.rhs);
        d["offsets"] = mono.offsets;
        return d;
      },
      py::arg("formulation"), py::arg("cell"), py::arg("n_div"), py::arg("params") = py::none(),
      "Monolithic CSR system (indptr, indices, data, shape, rhs, field offsets).");

  m.def(
      "solve",
      [](const std::string& formulation, const std::string& cell, int n_div, const std::string& method, double rtol,
         std::vector<std::string> options, std::optional<DppParameters> params, std::optional<double> constant) {
        const Problem p = build(formulation, cell, n_div, params, constant.value_or(std::nan("")));
        const solver::SolverConfig cfg = options.empty()
                                             ? solver::method_config(solver::parse_method(method), rtol)
                                             : solver::parse_options(options);
        solver::SolveReport rep;
        {
          py::gil_scoped_release release;
          rep = solver::solve(p.system, cfg);
        }
        py::dict d;
        d["converged"] = rep.converged();
        d["iterations"] = rep.stats.iterations;
        d["relative_residual"] = rep.stats.relative_residual;
        d["message"] = rep.message;
        d["config"] = cfg.describe();
        d["dof"] = p.system.total_size();
        d["setup_s"] = rep.setup_seconds;
        d["solve_s"] = rep.solve_seconds;
        py::list fields;
        for (const auto& f : rep.fields) fields.append(to_numpy(f));
        d["fields"] = fields;
        d["l2"] = l2_errors(p.mesh, p.formulation, rep.fields, p.mms);
        return d;
      },
      py::arg("formulation"), py::arg("cell"), py::arg("n_div"), py::arg("method") = "field",
      py::arg("rtol") = 1e-7, py::arg("options") = std::vector<std::string>{}, py::arg("params") = py::none(),
      py::arg("constant_pressure") = py::none(),
      "Assemble and solve the benchmark (or a constant-pressure) problem.");

  m.def(
      "describe_options",
      [](const std::string& text) { return solver::parse_options(solver::tokenize_options(text)).describe(); },
      py::arg("options"));
  m.def("method_options", [](const std::string& method) { return solver::method_options(solver::parse_method(method)); },
        py::arg("method"));

  m.def("doa", &tas::doa, py::arg("l2"));
  m.def("dos", &tas::dos, py::arg("dof"));
  m.def("doe", &tas::doe, py::arg("l2"), py::arg("seconds"));
  m.def("parallel_efficiency", &tas::parallel_efficiency, py::arg("t1"), py::arg("tp"), py::arg("workers"));
  m.def(
      "convergence_slope",
      [](const std::vector<long long>& dof, const std::vector<std::array<double, 4>>& l2) {
        if (dof.size() != l2.size()) throw std::invalid_argument("dof and l2 lengths differ");
        std::vector<tas::SpectrumRecord> recs(dof.size());
        for (std::size_t i = 0; i < dof.size(); ++i) {
          recs[i].dof = dof[i];
          recs[i].l2 = l2[i];
          recs[i].total_s = recs[i].solve_s = 1.0;
          recs[i].derive();
        }
        return tas::convergence_slope(recs);
      },
      py::arg("dof"), py::arg("l2"));

  m.def(
      "run_case",
      [](const std::string& formulation, const std::string& cell, int n_div, const std::string& method, double rtol,
         int repeats, int workers) {
        tas::RunOptions o;
        o.repeats = repeats;
        o.workers = workers;
        tas::SpectrumRecord r;
        {
          py::gil_scoped_release release;
          r = tas::run_case(parse_formulation(formulation), parse_cell_kind(cell), n_div,
                            solver::method_config(solver::parse_method(method), rtol), o);
        }
        return record_dict(r);
      },
      py::arg("formulation"), py::arg("cell"), py::arg("n_div"), py::arg("method") = "field", py::arg("rtol") = 1e-7,
      py::arg("repeats") = 1, py::arg("workers") = 1, "One spectrum record for the benchmark problem.");

  m.def(
      "run_experiment",
      [](const std::string& mode, const std::string& formulation, const std::string& cell, std::vector<int> sizes,
         const std::string& method, double rtol, const std::string& out_dir) {
        tas::ExperimentPlan plan;
        plan.mode = tas::parse_mode(mode);
        plan.formulation = parse_formulation(formulation);
        plan.cell = parse_cell_kind(cell);
        plan.sizes = std::move(sizes);
        plan.method = method;
        plan.rtol = rtol;
        plan.out_dir = out_dir;
        std::ostringstream log;
        const tas::ExperimentResult r = tas::run_experiment(plan, log);
        py::dict d;
        d["status"] = r.status;
        d["error"] = r.error;
        d["artifacts"] = r.artifacts;
        d["log"] = log.str();
        return d;
      },
      py::arg("mode"), py::arg("formulation"), py::arg("cell"), py::arg("sizes"), py::arg("method") = "field",
      py::arg("rtol") = 1e-7, py::arg("out_dir") = ".");

  m.def("emit_plots", [](const std::string& csv, const std::string& out) {
    const tas::PlotArtifacts a = tas::emit_plots(csv, out);
    return py::make_tuple(a.scripts, a.data_files);
  }, py::arg("csv"), py::arg("out_dir") = "");

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
