#pragma once

#include <string>
#include <vector>

#include "dpp/linalg/operator.hpp"

namespace dpp::linalg {

enum class Termination { Converged, HappyBreakdown, Stagnation, MaxIterations };
std::string to_string(Termination t);

struct KrylovStats {
  int iterations = 0;
  double relative_residual = 0.0;  // true ||b - A x|| / ||b||
  bool converged = false;
  double seconds = 0.0;
  Termination termination = Termination::MaxIterations;
  /// Preconditioned relative residual after every iteration.
  std::vector<double> residual_history;
  int restarts = 0;
};

struct GmresOptions {
  double rtol = 1e-7;
  int max_iterations = 1000;
  int restart = 30;
};

/// Restarted GMRES with left preconditioning. The Arnoldi loop watches the
/// preconditioned residual; convergence is only declared once the true
/// residual satisfies ||b - A x|| <= rtol ||b||, otherwise the inner target
/// is tightened and the iteration continues.
///
/// `x` holds the initial guess on entry (resized and zeroed if empty).
KrylovStats gmres(const LinearOperator& a, const LinearOperator* preconditioner, std::span<const double> b,
                  Vector& x, const GmresOptions& options = {});

}  // namespace dpp::linalg
