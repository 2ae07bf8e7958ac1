#include "dpp/solver/solve.hpp"

#include <ostream>

#include "dpp/solver/fieldsplit.hpp"
#include "dpp/timer.hpp"

namespace dpp::solver {

void SolveReport::write(std::ostream& os) const {
  os << "config=" << config << '\n'
     << "converged=" << (stats.converged ? 1 : 0) << '\n'
     << "termination=" << linalg::to_string(stats.termination) << '\n'
     << "ksp=" << stats.iterations << '\n'
     << "relative_residual=" << stats.relative_residual << '\n'
     << "assembly_s=" << assembly_seconds << '\n'
     << "setup_s=" << setup_seconds << '\n'
     << "solve_s=" << solve_seconds << '\n'
     << "total_s=" << total_seconds << '\n';
  if (!message.empty()) os << "message=" << message << '\n';
}

SolveReport solve(const BlockSystem& system, const SolverConfig& config) {
  config.validate();
  system.validate();
  SolveReport rep;
  rep.config = config.describe();
  rep.assembly_seconds = system.stats.seconds;

  Stopwatch clock;
  const MonolithicSystem mono = monolithic_view(system);
  auto pc = build_preconditioner(mono.matrix, {system.sizes.begin(), system.sizes.end()}, config.pc);
  rep.setup_seconds = clock.seconds();

  linalg::MatrixOperator op(mono.matrix);
  linalg::Vector x(mono.rhs.size(), 0.0);
  linalg::GmresOptions opt;
  opt.rtol = config.ksp.rtol;
  opt.restart = config.ksp.restart;
  opt.max_iterations = config.ksp.max_iterations;
  rep.stats = linalg::gmres(op, pc.get(), mono.rhs, x, opt);
  rep.solve_seconds = clock.seconds();
  rep.total_seconds = rep.assembly_seconds + rep.solve_seconds;

  if (!rep.stats.converged)
    rep.message = "gmres did not converge (" + linalg::to_string(rep.stats.termination) + ", " +
                  std::to_string(rep.stats.iterations) + " iterations, relative residual " +
                  std::to_string(rep.stats.relative_residual) + ")";
  rep.fields = split_fields(system, x);
  return rep;
}

}  // namespace dpp::solver
