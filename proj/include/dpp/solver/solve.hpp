#pragma once

#include <iosfwd>
#include <string>

#include "dpp/assembly.hpp"
#include "dpp/fe_field.hpp"
#include "dpp/linalg/gmres.hpp"
#include "dpp/solver/config.hpp"

namespace dpp::solver {

struct SolveReport {
  FieldVectors fields;
  linalg::KrylovStats stats;
  double assembly_seconds = 0.0;
  double setup_seconds = 0.0;   // preconditioner construction
  double solve_seconds = 0.0;   // setup + Krylov iterations
  double total_seconds = 0.0;
  std::string config;
  std::string message;          // empty on success

  bool converged() const { return stats.converged; }
  /// One key=value pair per line.
  void write(std::ostream& os) const;
};

/// Outer GMRES on the monolithic matrix with the configured block
/// preconditioner. A failed solve is reported through `converged()` and
/// `message`, never thrown; invalid configurations throw.
SolveReport solve(const BlockSystem& system, const SolverConfig& config);

}  // namespace dpp::solver
