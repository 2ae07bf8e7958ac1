// One PASS/FAIL line per acceptance criterion. Exit status counts failures
// outside the --known-failures list.
#include <CLI11.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpp/assembly.hpp"
#include "dpp/elements.hpp"
#include "dpp/fe_field.hpp"
#include "dpp/solver/solve.hpp"
#include "dpp/spectrum.hpp"

using namespace dpp;
using namespace dpp::solver;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

linalg::Vector dense_solution(const BlockSystem& sys) {
  const MonolithicSystem mono = monolithic_view(sys);
  const int n = mono.matrix.rows();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int k = mono.matrix.row_ptr()[r]; k < mono.matrix.row_ptr()[r + 1]; ++k)
      a(r, mono.matrix.col_idx()[k]) = mono.matrix.values()[k];
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(mono.rhs.data(), n);
  const Eigen::VectorXd x = a.partialPivLu().solve(b);
  return linalg::Vector(x.data(), x.data() + n);
}

double rel_diff(const linalg::Vector& a, const linalg::Vector& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

BlockSystem benchmark(Formulation f, CellKind kind, int n) {
  const int dim = cell_dim(kind);
  const Mesh mesh = generate_unit_mesh(dim, kind, n);
  const DppParameters p = dim == 2 ? DppParameters::benchmark_2d() : DppParameters::benchmark_3d();
  return assemble(f, mesh, p, boundary_data(benchmark_solution(dim, p), mesh));
}

const Formulation kForms[] = {Formulation::Hdiv, Formulation::CgVms, Formulation::DgVms};
const Method kMethods[] = {Method::ScaleSplit, Method::FieldSplit};

Outcome c1_dof_tables() {
  struct Row2 {
    int n;
    long long cg, dg_tri, dg_quad, hdiv_tri, hdiv_quad;
  };
  const Row2 rows2[] = {{5, 216, 900, 600, 270, 170},           {10, 726, 3600, 2400, 1040, 640},
                        {20, 2646, 14400, 9600, 4080, 2480},     {40, 10086, 57600, 38400, 16160, 9760},
                        {80, 39366, 230400, 153600, 64320, 38720}, {160, 155526, 921600, 614400, 256640, 154240}};
  int checked = 0, bad = 0;
  std::string notes;
  auto check = [&](Formulation f, CellKind k, int n, long long expected) {
    ++checked;
    long long got = dof_count(f, k, n);
    // generated meshes agree with the closed form where cheap
    if (cell_dim(k) == 2 ? n <= 40 : n <= 11) {
      const long long from_mesh = dof_count(f, generate_unit_mesh(cell_dim(k), k, n));
      if (from_mesh != got) got = -from_mesh;
    }
    if (got != expected) {
      ++bad;
      notes += " " + to_string(f) + "/" + to_string(k) + "/" + std::to_string(n) + "=" + std::to_string(got);
    }
  };
  for (const auto& r : rows2) {
    check(Formulation::CgVms, CellKind::Tri, r.n, r.cg);
    check(Formulation::CgVms, CellKind::Quad, r.n, r.cg);
    check(Formulation::DgVms, CellKind::Tri, r.n, r.dg_tri);
    check(Formulation::DgVms, CellKind::Quad, r.n, r.dg_quad);
    check(Formulation::Hdiv, CellKind::Tri, r.n, r.hdiv_tri);
    check(Formulation::Hdiv, CellKind::Quad, r.n, r.hdiv_quad);
  }
  struct Row3 {
    Formulation f;
    CellKind k;
    int n;
    long long dof;
  };
  // 3D reference rows 1-4; DG-VMS HEX n=9 is listed as 46686 but 8*8*9^3 = 46656
  const Row3 rows3[] = {
      {Formulation::CgVms, CellKind::Tet, 13, 21952},  {Formulation::CgVms, CellKind::Tet, 17, 46656},
      {Formulation::CgVms, CellKind::Tet, 21, 85184},  {Formulation::CgVms, CellKind::Tet, 28, 195112},
      {Formulation::CgVms, CellKind::Hex, 13, 21952},  {Formulation::CgVms, CellKind::Hex, 17, 46656},
      {Formulation::CgVms, CellKind::Hex, 21, 85184},  {Formulation::CgVms, CellKind::Hex, 28, 195112},
      {Formulation::DgVms, CellKind::Tet, 5, 24000},   {Formulation::DgVms, CellKind::Tet, 6, 41472},
      {Formulation::DgVms, CellKind::Tet, 8, 98304},   {Formulation::DgVms, CellKind::Tet, 10, 192000},
      {Formulation::DgVms, CellKind::Hex, 7, 21952},   {Formulation::DgVms, CellKind::Hex, 9, 46656},
      {Formulation::DgVms, CellKind::Hex, 11, 85184},  {Formulation::DgVms, CellKind::Hex, 14, 175616},
      {Formulation::Hdiv, CellKind::Tet, 8, 19200},    {Formulation::Hdiv, CellKind::Tet, 10, 37200},
      {Formulation::Hdiv, CellKind::Tet, 13, 81120},   {Formulation::Hdiv, CellKind::Tet, 17, 180336},
      {Formulation::Hdiv, CellKind::Hex, 13, 18590},   {Formulation::Hdiv, CellKind::Hex, 17, 41038},
      {Formulation::Hdiv, CellKind::Hex, 22, 88088},   {Formulation::Hdiv, CellKind::Hex, 28, 180320}};
  for (const auto& r : rows3) check(r.f, r.k, r.n, r.dof);
  Outcome o;
  o.pass = bad == 0;
  o.detail = std::to_string(checked - bad) + "/" + std::to_string(checked) +
             " rows exact (2D n=5..160, 3D first four rows; DG-VMS HEX n=9 compared against 46656, listed as 46686)" + notes;
  return o;
}

Outcome c2_eta() {
  const double e2 = eta(DppParameters::benchmark_2d()), e3 = eta(DppParameters::benchmark_3d());
  const double s = std::sqrt(11.0);
  Outcome o;
  o.pass = std::abs(e2 - s) <= 1e-12 && std::abs(e3 - s) <= 1e-12;
  o.detail = "eta 2D " + fmt("%.15g", e2) + ", 3D " + fmt("%.15g", e3) + ", sqrt(11) " + fmt("%.15g", s);
  return o;
}

std::array<double, 4> slopes_for(Formulation f, CellKind k, const std::vector<int>& sizes) {
  std::vector<tas::SpectrumRecord> recs;
  for (int n : sizes) recs.push_back(tas::run_case(f, k, n, method_config(Method::FieldSplit, 1e-7)));
  return tas::convergence_slope(recs);
}

std::string slope_text(const std::array<double, 4>& s) {
  std::string t = "[";
  for (int i = 0; i < 4; ++i) t += (i ? " " : "") + fmt("%.3f", s[i]);
  return t + "]";
}

Outcome c3_slopes_2d() {
  const std::vector<int> sweep{5, 10, 20, 40};
  Outcome o;
  o.pass = true;
  for (Formulation f : kForms) {
    const auto s = slopes_for(f, CellKind::Tri, sweep);
    const double target = f == Formulation::Hdiv ? 0.5 : 1.0;
    for (double v : s) o.pass = o.pass && std::abs(v - target) <= 0.15;
    o.detail += to_string(f) + "/tri " + slope_text(s) + " (" + fmt("%.1f", target) + "+-0.15); ";
  }
  const auto q = slopes_for(Formulation::Hdiv, CellKind::Quad, sweep);
  for (double v : q) o.pass = o.pass && v >= 0.5;
  o.detail += "hdiv/quad " + slope_text(q) + " (>=0.5)";
  return o;
}

Outcome c4_slopes_3d() {
  const std::vector<int> sweep{4, 6, 8};
  const auto cg = slopes_for(Formulation::CgVms, CellKind::Tet, sweep);
  const auto hd = slopes_for(Formulation::Hdiv, CellKind::Tet, sweep);
  Outcome o;
  o.pass = true;
  for (double v : cg) o.pass = o.pass && std::abs(v - 2.0 / 3.0) <= 0.15;
  for (double v : hd) o.pass = o.pass && std::abs(v - 1.0 / 3.0) <= 0.1;
  o.detail = "cgvms/tet " + slope_text(cg) + " (0.667+-0.15); hdiv/tet " + slope_text(hd) + " (0.333+-0.1)";
  return o;
}

Outcome c5_dense_oracle() {
  Outcome o;
  o.pass = true;
  double worst = 0.0;
  for (Formulation f : kForms)
    for (CellKind k : {CellKind::Tri, CellKind::Quad}) {
      const BlockSystem sys = benchmark(f, k, 4);
      const linalg::Vector ref = dense_solution(sys);
      for (Method m : kMethods) {
        const SolveReport rep = solve(sys, method_config(m, 1e-10));
        const double d = rel_diff(join_fields(sys, rep.fields), ref);
        worst = std::max(worst, d);
        if (!rep.converged() || d > 1e-7) {
          o.pass = false;
          o.detail += to_string(f) + "/" + to_string(k) + "/" + to_string(m) + " " + fmt("%.2e", d) + "; ";
        }
      }
    }
  o.detail += "12 solves, worst relative difference " + fmt("%.2e", worst) + " (<=1e-7)";
  return o;
}

Outcome c6_method_equivalence() {
  Outcome o;
  o.pass = true;
  double worst = 0.0;
  auto compare = [&](Formulation f, CellKind k, int n) {
    const BlockSystem sys = benchmark(f, k, n);
    const SolveReport a = solve(sys, method_config(Method::ScaleSplit, 1e-10));
    const SolveReport b = solve(sys, method_config(Method::FieldSplit, 1e-10));
    const double d = rel_diff(join_fields(sys, a.fields), join_fields(sys, b.fields));
    worst = std::max(worst, d);
    if (!a.converged() || !b.converged() || d > 1e-6) {
      o.pass = false;
      o.detail += to_string(f) + "/" + to_string(k) + " " + fmt("%.2e", d) + "; ";
    }
  };
  for (Formulation f : kForms)
    for (CellKind k : {CellKind::Tri, CellKind::Quad}) compare(f, k, 4);
  compare(Formulation::DgVms, CellKind::Tet, 3);
  o.detail += "7 systems, worst relative difference " + fmt("%.2e", worst) + " (<=1e-6)";
  return o;
}

Outcome c7_mass_balance() {
  const Mesh mesh = generate_unit_mesh(2, CellKind::Tri, 8);
  const DppParameters p = DppParameters::benchmark_2d();
  const BlockSystem sys = assemble_hdiv(mesh, p, boundary_data(benchmark_solution(2, p), mesh));
  double worst = 0.0;
  bool converged = true;
  for (Method m : kMethods) {
    const SolveReport rep = solve(sys, method_config(m, 1e-12));
    converged = converged && rep.converged();
    for (int net = 0; net < 2; ++net)
      for (double r : hdiv_cell_mass_balance(mesh, p, rep.fields, net)) worst = std::max(worst, std::abs(r));
  }
  Outcome o;
  o.pass = converged && worst <= 1e-9;
  o.detail = "TRI n=8, rtol 1e-12, both methods, both networks: max cell residual " + fmt("%.2e", worst) + " (<=1e-9)";
  return o;
}

Outcome c8_patch() {
  Outcome o;
  o.pass = true;
  double worst = 0.0;
  int max_it = 0, over = 0, runs = 0;
  const double c = 2.75;
  for (Formulation f : kForms)
    for (CellKind k : {CellKind::Tri, CellKind::Quad, CellKind::Tet, CellKind::Hex})
      for (Method m : kMethods) {
        const int dim = cell_dim(k);
        const Mesh mesh = generate_unit_mesh(dim, k, dim == 2 ? 4 : 2);
        const DppParameters p = dim == 2 ? DppParameters::benchmark_2d() : DppParameters::benchmark_3d();
        const BlockSystem sys = assemble(f, mesh, p, boundary_data(constant_pressure_solution(dim, c, p), mesh));
        const SolveReport rep = solve(sys, method_config(m, 1e-12));
        ++runs;
        double e = 0.0;
        for (int fld = 0; fld < 4; ++fld)
          for (double v : rep.fields[fld]) e = std::max(e, std::abs(v - (fld % 2 ? c : 0.0)));
        worst = std::max(worst, e);
        max_it = std::max(max_it, rep.stats.iterations);
        if (rep.stats.iterations > 3) ++over;
        if (!rep.converged() || e > 1e-10 || rep.stats.iterations > 3) o.pass = false;
      }
  o.detail = std::to_string(runs) + " runs, max error " + fmt("%.2e", worst) + " (<=1e-10), max iterations " +
             std::to_string(max_it) + " (<=3), " + std::to_string(over) + " runs over the iteration bound";
  return o;
}

Outcome c9_iteration_growth() {
  Outcome o;
  o.pass = true;
  for (Formulation f : {Formulation::Hdiv, Formulation::CgVms})
    for (Method m : kMethods) {
      const SolveReport a = solve(benchmark(f, CellKind::Tri, 8), method_config(m, 1e-7));
      const SolveReport b = solve(benchmark(f, CellKind::Tri, 32), method_config(m, 1e-7));
      const bool ok = a.converged() && b.converged() && b.stats.iterations <= 2 * a.stats.iterations;
      o.pass = o.pass && ok;
      o.detail += to_string(f) + "/" + to_string(m) + " " + std::to_string(a.stats.iterations) + "->" +
                  std::to_string(b.stats.iterations) + "; ";
    }
  o.detail += "(n=8 -> n=32, growth <=2x)";
  return o;
}

Outcome c10_static_scaling() {
  Outcome o;
  o.pass = true;
  tas::RunOptions opts;
  opts.repeats = 3;
  for (Formulation f : kForms) {
    const tas::ScalingResult r =
        tas::static_scaling_run(f, CellKind::Tri, {8, 16, 32}, method_config(Method::FieldSplit, 1e-7), opts);
    double lo = 1e300, hi = 0.0;
    for (const auto& rec : r.records) {
      lo = std::min(lo, rec.dof_per_s_total);
      hi = std::max(hi, rec.dof_per_s_total);
    }
    const bool ok = r.complete && r.records.size() == 3 && hi / lo < 4.0;
    o.pass = o.pass && ok;
    o.detail += to_string(f) + " DoF/s ratio " + fmt("%.2f", r.records.empty() ? 0.0 : hi / lo) + "; ";
  }
  o.detail += "(TRI n=8,16,32, 1 worker, min of 3 repeats, <4x)";
  return o;
}

Outcome c11_formulas() {
  struct Check {
    const char* name;
    double got, want, tol;
  };
  const Check checks[] = {
      {"doa(1e-3)", tas::doa(1e-3), 3.0, 1e-12},
      {"doe(1e-3,10)", tas::doe(1e-3, 10.0), 2.0, 1e-12},
      {"dos(216)", tas::dos(216), -2.3345, 5e-5},
      {"eff(1.26,0.893,2)", tas::parallel_efficiency(1.26, 0.893, 2), 70.6, 0.5},
      {"eff(t,t,1)", tas::parallel_efficiency(0.7, 0.7, 1), 100.0, 1e-12},
      {"eff(8,1,8)", tas::parallel_efficiency(8.0, 1.0, 8), 100.0, 1e-12},
  };
  Outcome o;
  o.pass = true;
  for (const auto& c : checks) {
    const bool ok = std::abs(c.got - c.want) <= c.tol;
    o.pass = o.pass && ok;
    o.detail += std::string(c.name) + "=" + fmt("%.6g", c.got) + (ok ? "" : " (off)") + "; ";
  }
  o.detail.resize(o.detail.size() - 2);
  return o;
}

Outcome c12_declared() {
  return {false,
          "declared not reproducible: absolute times and 16-rank efficiencies of the strong-scaling tables and the "
          "million-DoF 3D sweeps; covered by proxies C9 and C10"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> only;
  std::vector<int> known;
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--known-failures", known, "Criteria whose FAIL does not affect the exit status")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"DoF tables", c1_dof_tables},
      {"eta", c2_eta},
      {"2D convergence slopes", c3_slopes_2d},
      {"3D convergence slopes", c4_slopes_3d},
      {"dense direct oracle", c5_dense_oracle},
      {"method equivalence", c6_method_equivalence},
      {"H(div) local mass balance", c7_mass_balance},
      {"patch test", c8_patch},
      {"iteration growth", c9_iteration_growth},
      {"static-scaling flatness", c10_static_scaling},
      {"spectrum formulas", c11_formulas},
      {"strong scaling at cluster scale", c12_declared},
  };
  const std::set<int> selected(only.begin(), only.end()), tolerated(known.begin(), known.end());
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("C%-2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass && !tolerated.count(id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
