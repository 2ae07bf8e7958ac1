#include "dpp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dpp/assembly.hpp"
#include "dpp/elements.hpp"
#include "dpp/fe_field.hpp"
#include "dpp/solver/solve.hpp"

namespace dpp::tas {

double doa(double l2) {
  if (!(l2 > 0.0)) throw std::domain_error("L2 error must be positive");
  return -std::log10(l2);
}

double dos(double dof) {
  if (!(dof > 0.0)) throw std::domain_error("DoF must be positive");
  return -std::log10(dof);
}

double doe(double l2, double seconds) {
  if (!(l2 > 0.0) || !(seconds > 0.0)) throw std::domain_error("L2 error and time must be positive");
  return -std::log10(l2 * seconds);
}

double parallel_efficiency(double t1, double tp, int workers) {
  if (!(t1 > 0.0) || !(tp > 0.0) || workers < 1) throw std::domain_error("times and worker count must be positive");
  return t1 / (tp * workers) * 100.0;
}

EfficiencySeries EfficiencySeries::from_times(std::vector<int> workers, std::vector<double> times) {
  if (workers.empty() || workers.size() != times.size()) throw std::invalid_argument("mismatched efficiency series");
  if (workers.front() != 1) throw std::invalid_argument("efficiency series must start at one worker");
  EfficiencySeries s;
  s.workers = std::move(workers);
  s.times = std::move(times);
  for (std::size_t i = 0; i < s.workers.size(); ++i)
    s.efficiency.push_back(parallel_efficiency(s.times.front(), s.times[i], s.workers[i]));
  return s;
}

void SpectrumRecord::derive() {
  auto safe = [](auto f) {
    try {
      return f();
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  for (int f = 0; f < kNumFields; ++f) {
    doa[f] = safe([&] { return tas::doa(l2[f]); });
    doe[f] = safe([&] { return tas::doe(l2[f], total_s); });
  }
  dos = safe([&] { return tas::dos(static_cast<double>(dof)); });
  auto rate = [this](double t) { return t > 0.0 ? static_cast<double>(dof) / t : std::numeric_limits<double>::quiet_NaN(); };
  dof_per_s_assembly = rate(assembly_s);
  dof_per_s_solve = rate(solve_s);
  dof_per_s_total = rate(total_s);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs matching samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct abscissae");
  return sxy / sxx;
}

std::array<double, kNumFields> convergence_slope(const std::vector<SpectrumRecord>& records) {
  if (records.size() < 3) throw std::invalid_argument("convergence slope needs at least three records");
  for (std::size_t i = 1; i < records.size(); ++i)
    if (records[i].dof <= records[i - 1].dof) throw std::invalid_argument("records must have strictly increasing DoF");
  std::vector<double> x;
  for (const auto& r : records) x.push_back(tas::dos(static_cast<double>(r.dof)));
  std::array<double, kNumFields> out{};
  for (int f = 0; f < kNumFields; ++f) {
    std::vector<double> y;
    for (const auto& r : records) y.push_back(tas::doa(r.l2[f]));
    out[f] = std::abs(fit_slope(x, y));
  }
  return out;
}

SpectrumRecord run_case(Formulation formulation, CellKind cell, int n_div, const solver::SolverConfig& config,
                        const RunOptions& options) {
  if (options.repeats < 1) throw std::invalid_argument("repeats must be positive");
  const int dim = cell_dim(cell);
  const DppParameters params =
      options.params_set ? options.params : (dim == 2 ? DppParameters::benchmark_2d() : DppParameters::benchmark_3d());
  const Mesh mesh = generate_unit_mesh(dim, cell, n_div);
  const ManufacturedSolution mms = benchmark_solution(dim, params);
  const BoundarySpec bcs = boundary_data(mms, mesh);
  AssemblyOptions aopt;
  aopt.workers = options.workers;

  SpectrumRecord rec;
  rec.formulation = formulation;
  rec.cell = cell;
  rec.n_div = n_div;
  rec.dof = dof_count(formulation, mesh);
  rec.assembly_s = rec.solve_s = rec.total_s = std::numeric_limits<double>::infinity();
  for (int rep = 0; rep < options.repeats; ++rep) {
    const BlockSystem sys = assemble(formulation, mesh, params, bcs, aopt);
    solver::SolveReport report = solver::solve(sys, config);
    if (!report.converged()) throw std::runtime_error(report.message);
    rec.assembly_s = std::min(rec.assembly_s, report.assembly_seconds);
    rec.solve_s = std::min(rec.solve_s, report.solve_seconds);
    rec.total_s = std::min(rec.total_s, report.total_seconds);
    rec.ksp = report.stats.iterations;
    if (rep == 0) rec.l2 = l2_errors(mesh, formulation, report.fields, mms, options.quadrature_degree);
  }
  rec.derive();
  return rec;
}

ScalingResult static_scaling_run(Formulation formulation, CellKind cell, const std::vector<int>& n_divs,
                                 const solver::SolverConfig& config, const RunOptions& options) {
  if (n_divs.empty()) throw std::invalid_argument("empty size list");
  for (std::size_t i = 1; i < n_divs.size(); ++i)
    if (n_divs[i] <= n_divs[i - 1]) throw std::invalid_argument("size list must be strictly increasing");
  ScalingResult out;
  for (int n : n_divs) {
    try {
      out.records.push_back(run_case(formulation, cell, n, config, options));
    } catch (const std::exception& e) {
      out.complete = false;
      out.error = "n_div=" + std::to_string(n) + ": " + e.what();
      break;
    }
  }
  return out;
}

const std::string& csv_header() {
  static const std::string h =
      "formulation,cell,ndiv,dof,ksp,assembly_s,solve_s,total_s,l2_u1,l2_p1,l2_u2,l2_p2,doa_u1,doa_p1,doa_u2,doa_p2,"
      "dos,doe_u1,doe_p1,doe_u2,doe_p2,dof_per_s_total";
  return h;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_csv_row(std::ostream& os, const SpectrumRecord& r) {
  os << to_string(r.formulation) << ',' << to_string(r.cell) << ',' << r.n_div << ',' << r.dof << ',' << r.ksp << ','
     << num(r.assembly_s) << ',' << num(r.solve_s) << ',' << num(r.total_s);
  for (double v : r.l2) os << ',' << num(v);
  for (double v : r.doa) os << ',' << num(v);
  os << ',' << num(r.dos);
  for (double v : r.doe) os << ',' << num(v);
  os << ',' << num(r.dof_per_s_total) << '\n';
}

void write_csv(std::ostream& os, const std::vector<SpectrumRecord>& records) {
  os << csv_header() << '\n';
  for (const auto& r : records) write_csv_row(os, r);
}

std::vector<SpectrumRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw std::invalid_argument("unexpected CSV header");
  std::vector<SpectrumRecord> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    const std::string where = "CSV line " + std::to_string(lineno);
    if (cols.size() != 22) throw std::invalid_argument(where + ": expected 22 columns");
    auto d = [&](int i) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cols[i], &used);
        if (used != cols[i].size()) throw std::invalid_argument(cols[i]);
        return v;
      } catch (const std::exception&) {
        throw std::invalid_argument(where + ": bad number '" + cols[i] + "'");
      }
    };
    SpectrumRecord r;
    try {
      r.formulation = parse_formulation(cols[0]);
      r.cell = parse_cell_kind(cols[1]);
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
    r.n_div = static_cast<int>(d(2));
    r.dof = static_cast<long long>(d(3));
    r.ksp = static_cast<int>(d(4));
    r.assembly_s = d(5);
    r.solve_s = d(6);
    r.total_s = d(7);
    for (int f = 0; f < kNumFields; ++f) r.l2[f] = d(8 + f);
    r.derive();
    for (int f = 0; f < kNumFields; ++f) {
      r.doa[f] = d(12 + f);
      r.doe[f] = d(17 + f);
    }
    r.dos = d(16);
    r.dof_per_s_total = d(21);
    out.push_back(r);
  }
  return out;
}

}  // namespace dpp::tas
