#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpp/problem.hpp"
#include "dpp/solver/config.hpp"
#include "dpp/types.hpp"

namespace dpp::tas {

/// Digits of accuracy, size and efficacy. Throw std::domain_error on
/// non-positive input.
double doa(double l2);
double dos(double dof);
double doe(double l2, double seconds);

/// T1 / (Tp * workers) * 100.
double parallel_efficiency(double t1, double tp, int workers);

struct EfficiencySeries {
  std::vector<int> workers;
  std::vector<double> times;
  std::vector<double> efficiency;  // percent, relative to the first entry

  /// The first entry must be the single-worker run.
  static EfficiencySeries from_times(std::vector<int> workers, std::vector<double> times);
};

struct SpectrumRecord {
  Formulation formulation = Formulation::Hdiv;
  CellKind cell = CellKind::Tri;
  int n_div = 0;
  long long dof = 0;
  int ksp = 0;
  double assembly_s = 0.0;
  double solve_s = 0.0;
  double total_s = 0.0;
  std::array<double, kNumFields> l2{};
  // derived
  std::array<double, kNumFields> doa{};
  double dos = 0.0;
  std::array<double, kNumFields> doe{};
  double dof_per_s_assembly = 0.0;
  double dof_per_s_solve = 0.0;
  double dof_per_s_total = 0.0;
  bool converged = true;

  /// Recomputes every derived column from the stored raw ones.
  void derive();
};

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// |d DoA / d DoS| per field. Needs at least three records with strictly
/// increasing DoF; throws std::invalid_argument otherwise.
std::array<double, kNumFields> convergence_slope(const std::vector<SpectrumRecord>& records);

struct RunOptions {
  DppParameters params;
  bool params_set = false;   // false: the built-in set for the mesh dimension
  int workers = 1;
  int repeats = 1;           // timings are the minimum over repeats
  int quadrature_degree = 4; // for the L2 errors
};

/// Mesh, assemble, solve and measure one case against the benchmark solution.
/// Throws std::runtime_error if the solve does not converge.
SpectrumRecord run_case(Formulation formulation, CellKind cell, int n_div, const solver::SolverConfig& config,
                        const RunOptions& options = {});

struct ScalingResult {
  std::vector<SpectrumRecord> records;
  bool complete = true;
  std::string error;  // reason the sweep stopped early
};

/// One record per size at a fixed worker count, executed sequentially. A
/// failing size stops the sweep; the records gathered so far are kept.
ScalingResult static_scaling_run(Formulation formulation, CellKind cell, const std::vector<int>& n_divs,
                                 const solver::SolverConfig& config, const RunOptions& options = {});

const std::string& csv_header();
void write_csv(std::ostream& os, const std::vector<SpectrumRecord>& records);
void write_csv_row(std::ostream& os, const SpectrumRecord& record);
/// Throws std::invalid_argument on a wrong header or malformed row.
std::vector<SpectrumRecord> read_csv(std::istream& is);

}  // namespace dpp::tas
