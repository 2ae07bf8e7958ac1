#include "dpp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "dpp/plots.hpp"
#include "dpp/problem.hpp"
#include "dpp/solver/config.hpp"
#include "dpp/spectrum.hpp"

namespace dpp::tas {

namespace fs = std::filesystem;

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Solve: return "solve";
    case Mode::Convergence: return "convergence";
    case Mode::StaticScaling: return "static-scaling";
    case Mode::Doe: return "doe";
    case Mode::Plot: return "plot";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::Solve, Mode::Convergence, Mode::StaticScaling, Mode::Doe, Mode::Plot})
    if (s == to_string(m)) return m;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

void ExperimentPlan::validate() const {
  if (mode == Mode::Plot) {
    if (csv.empty()) throw std::invalid_argument("plot mode needs --csv");
    return;
  }
  if (mode == Mode::Doe && (l2 || time)) {
    if (!l2 || !time) throw std::invalid_argument("doe mode needs both --l2 and --time");
    if (!(*l2 > 0.0) || !(*time > 0.0)) throw std::invalid_argument("--l2 and --time must be positive");
    return;
  }
  if (sizes.empty()) throw std::invalid_argument("no mesh size given (--ndiv or --sweep)");
  for (int n : sizes)
    if (n < 1) throw std::invalid_argument("mesh sizes must be positive");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sweep must be strictly increasing");
  if (mode == Mode::Solve && sizes.size() != 1) throw std::invalid_argument("solve mode takes exactly one size");
  if (mode == Mode::Convergence && sizes.size() < 3) throw std::invalid_argument("convergence mode needs at least three sizes");
  if (!(rtol > 0.0 && rtol < 1.0)) throw std::invalid_argument("rtol must lie in (0, 1)");
  if (repeats < 1) throw std::invalid_argument("repeats must be positive");
  if (workers < 1) throw std::invalid_argument("workers must be positive");
  if (petsc_options.empty()) solver::parse_method(method);
  else solver::parse_options(petsc_options);
}

std::string ExperimentPlan::method_label() const {
  return petsc_options.empty() ? solver::to_string(solver::parse_method(method)) : "custom";
}

std::string ExperimentPlan::csv_name() const {
  return to_string(mode) + "_" + to_string(formulation) + "_" + to_string(cell) + "_" + method_label() + ".csv";
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string write_records(const ExperimentPlan& plan, const std::vector<SpectrumRecord>& recs) {
  fs::create_directories(plan.out_dir);
  const fs::path p = fs::path(plan.out_dir) / plan.csv_name();
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  write_csv(out, recs);
  return p.string();
}

ExperimentResult run(const ExperimentPlan& plan, std::ostream& log) {
  ExperimentResult res;
  plan.validate();

  if (plan.mode == Mode::Plot) {
    const PlotArtifacts art = emit_plots(plan.csv, plan.out_dir == "." ? "" : plan.out_dir);
    for (const auto& s : art.scripts) log << "script=" << s << '\n';
    res.artifacts = art.scripts;
    res.artifacts.insert(res.artifacts.end(), art.data_files.begin(), art.data_files.end());
    return res;
  }

  if (plan.mode == Mode::Doe && plan.l2) {
    const double v = doe(*plan.l2, *plan.time);
    fs::create_directories(plan.out_dir);
    const fs::path p = fs::path(plan.out_dir) / "doe_given.csv";
    std::ofstream out(p);
    out << "l2,time_s,doe\n" << num(*plan.l2) << ',' << num(*plan.time) << ',' << num(v) << '\n';
    log << "doe=" << num(v) << '\n';
    res.artifacts.push_back(p.string());
    return res;
  }

  solver::SolverConfig cfg = plan.petsc_options.empty()
                                 ? solver::method_config(solver::parse_method(plan.method))
                                 : solver::parse_options(plan.petsc_options);
  cfg.ksp.rtol = plan.rtol;

  RunOptions ro;
  ro.workers = plan.workers;
  ro.repeats = plan.repeats;
  if (!plan.params.empty()) {
    ro.params = resolve_parameters(plan.params);
    ro.params_set = true;
  }

  const ScalingResult sweep = static_scaling_run(plan.formulation, plan.cell, plan.sizes, cfg, ro);
  if (!sweep.records.empty()) res.artifacts.push_back(write_records(plan, sweep.records));
  for (const auto& r : sweep.records) {
    log << "ndiv=" << r.n_div << " dof=" << r.dof << " ksp=" << r.ksp << " total_s=" << num(r.total_s)
        << " dof_per_s=" << num(r.dof_per_s_total);
    for (int f = 0; f < kNumFields; ++f) log << " l2_" << to_string(Field(f)) << '=' << num(r.l2[f]);
    if (plan.mode == Mode::Doe)
      for (int f = 0; f < kNumFields; ++f) log << " doe_" << to_string(Field(f)) << '=' << num(r.doe[f]);
    log << '\n';
  }
  if (!sweep.complete) {
    res.status = 2;
    res.error = "solve failed at " + sweep.error;
    return res;
  }

  if (plan.mode == Mode::Convergence) {
    const auto slopes = convergence_slope(sweep.records);
    const fs::path p = fs::path(plan.out_dir) / (fs::path(plan.csv_name()).stem().string() + "_slopes.txt");
    std::ofstream out(p);
    out << "# |dDoA/dDoS| per field; DoS = -log10(DoF), so raw slopes are negative\n";
    for (int f = 0; f < kNumFields; ++f) {
      out << "slope_" << to_string(Field(f)) << '=' << num(slopes[f]) << '\n';
      log << "slope_" << to_string(Field(f)) << '=' << num(slopes[f]) << '\n';
    }
    res.artifacts.push_back(p.string());
  }
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream& log) {
  try {
    return run(plan, log);
  } catch (const std::exception& e) {
    ExperimentResult res;
    res.status = 1;
    res.error = e.what();
    return res;
  }
}

}  // namespace dpp::tas
