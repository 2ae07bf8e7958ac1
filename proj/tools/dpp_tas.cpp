// Experiment driver: single solves, convergence and static-scaling sweeps,
// DoE reports and gnuplot script emission.
#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

#include "dpp/experiment.hpp"
#include "dpp/solver/config.hpp"

namespace {

std::vector<int> parse_sweep(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("bad --sweep entry '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int fail(const std::string& why) {
  std::string line = why;
  std::replace(line.begin(), line.end(), '\n', ' ');
  std::cerr << "error: " << line << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Performance-spectrum experiments for the double porosity/permeability model"};
  app.set_config("--config", "", "INI/TOML file with the same keys as the long flags; flags take precedence");

  std::string mode = "solve", formulation = "hdiv", cell = "tri", method = "field", sweep, petsc, options_file;
  int ndiv = 0;
  dpp::tas::ExperimentPlan plan;
  double l2 = 0.0, time = 0.0;

  app.add_option("--mode", mode, "solve | convergence | static-scaling | doe | plot")->capture_default_str();
  app.add_option("--formulation", formulation, "hdiv | cgvms | dgvms")->capture_default_str();
  app.add_option("--cell", cell, "tri | quad | tet | hex")->capture_default_str();
  app.add_option("--ndiv", ndiv, "Divisions per side for a single solve");
  app.add_option("--sweep", sweep, "Comma-separated increasing list of divisions");
  app.add_option("--method", method, "scale | field (block preconditioner)")->capture_default_str();
  app.add_option("--petsc-options", petsc, "Raw option tokens, e.g. \"-ksp_type gmres -pc_type fieldsplit ...\"");
  app.add_option("--options-file", options_file, "File with option tokens (# comments allowed)");
  app.add_option("--rtol", plan.rtol, "Relative residual tolerance")->capture_default_str();
  app.add_option("--repeats", plan.repeats, "Timing repeats (minimum is reported)")->capture_default_str();
  app.add_option("--workers", plan.workers, "Assembly worker threads")->capture_default_str();
  app.add_option("--params", plan.params, "benchmark-2d | benchmark-3d | parameter file (default: by dimension)");
  app.add_option("--out", plan.out_dir, "Output directory")->capture_default_str();
  app.add_option("--csv", plan.csv, "Spectrum CSV to plot (plot mode)");
  auto* l2_opt = app.add_option("--l2", l2, "L2 error for a DoE evaluation without solving");
  auto* time_opt = app.add_option("--time", time, "Time (s) for a DoE evaluation without solving");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(e.what());
  }

  try {
    plan.mode = dpp::tas::parse_mode(mode);
    plan.formulation = dpp::parse_formulation(formulation);
    plan.cell = dpp::parse_cell_kind(cell);
    plan.method = method;
    if (!sweep.empty() && ndiv > 0) return fail("give either --ndiv or --sweep, not both");
    plan.sizes = sweep.empty() ? (ndiv > 0 ? std::vector<int>{ndiv} : std::vector<int>{}) : parse_sweep(sweep);
    if (!petsc.empty() && !options_file.empty()) return fail("give either --petsc-options or --options-file, not both");
    if (!petsc.empty()) plan.petsc_options = dpp::solver::tokenize_options(petsc);
    if (!options_file.empty()) plan.petsc_options = dpp::solver::read_options_file(options_file);
    if (l2_opt->count()) plan.l2 = l2;
    if (time_opt->count()) plan.time = time;
  } catch (const std::exception& e) {
    return fail(e.what());
  }

  const dpp::tas::ExperimentResult res = dpp::tas::run_experiment(plan, std::cout);
  if (res.status != 0) {
    fail(res.error);
    return res.status;
  }
  for (const auto& a : res.artifacts) std::cout << "wrote " << a << '\n';
  return 0;
}
