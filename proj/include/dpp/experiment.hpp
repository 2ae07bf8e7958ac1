#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dpp/types.hpp"

namespace dpp::tas {

enum class Mode { Solve, Convergence, StaticScaling, Doe, Plot };
std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct ExperimentPlan {
  Mode mode = Mode::Solve;
  Formulation formulation = Formulation::Hdiv;
  CellKind cell = CellKind::Tri;
  std::vector<int> sizes;               // n_div values; one entry for solve mode
  std::string method = "field";         // scale | field
  std::vector<std::string> petsc_options;  // overrides `method` when nonempty
  double rtol = 1e-7;
  int repeats = 1;
  int workers = 1;
  std::string params;                   // named set or parameter file; empty = built-in for the dimension
  std::string out_dir = ".";
  std::string csv;                      // plot mode input
  std::optional<double> l2, time;       // doe mode with given inputs

  /// Throws std::invalid_argument with a one-line reason.
  void validate() const;
  /// "custom" when raw options are given.
  std::string method_label() const;
  /// {mode}_{formulation}_{cell}_{method}.csv
  std::string csv_name() const;
};

struct ExperimentResult {
  int status = 0;                       // 0 success
  std::string error;                    // one line when status != 0
  std::vector<std::string> artifacts;   // files written
};

/// Executes the plan, writing artifacts under `out_dir` and a short report
/// to `log`. Validation errors and failed solves come back as a nonzero
/// status, not as exceptions.
ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream& log);

}  // namespace dpp::tas
