#pragma once

#include <memory>
#include <vector>

#include "dpp/linalg/dense.hpp"
#include "dpp/linalg/operator.hpp"

namespace dpp::linalg {

struct AmgOptions {
  double strength_threshold = 0.08;
  double jacobi_weight = 2.0 / 3.0;
  int max_coarse = 64;   // direct solve at or below this size
  int max_levels = 25;
  int pre_sweeps = 1;    // forward Gauss-Seidel
  int post_sweeps = 1;   // backward Gauss-Seidel
  int stalled_sweeps = 4;  // symmetric sweeps when coarsening stalls above max_coarse
};

struct AmgLevel {
  CsrMatrix a;
  CsrMatrix p;  // interpolation to this level from the next coarser one
  CsrMatrix r;  // p^T
  Vector diag;
};

/// Smoothed-aggregation hierarchy.
struct AmgHierarchy {
  std::vector<AmgLevel> levels;
  DenseLu coarse_lu;
  bool coarse_direct = true;
  AmgOptions options;

  int n_levels() const { return static_cast<int>(levels.size()); }
  /// Sum of level nonzeros over fine-level nonzeros.
  double operator_complexity() const;
};

/// Aggregates by strength |a_ij| >= theta sqrt(|a_ii a_jj|); -1 marks nodes
/// left out (no strong neighbours). Returns the aggregate count.
int aggregate(const CsrMatrix& a, double theta, std::vector<int>& agg);

/// Throws std::runtime_error on an empty row or nonpositive diagonal.
AmgHierarchy amg_setup(const CsrMatrix& a, const AmgOptions& options = {});

/// One V-cycle from a zero initial guess.
void amg_vcycle(const AmgHierarchy& h, std::span<const double> r, std::span<double> z);
Vector amg_vcycle(const AmgHierarchy& h, std::span<const double> r);

class AmgPreconditioner final : public LinearOperator {
 public:
  explicit AmgPreconditioner(const CsrMatrix& a, const AmgOptions& options = {})
      : h_(amg_setup(a, options)) {}
  int size() const override { return h_.levels.front().a.rows(); }
  void apply(std::span<const double> r, std::span<double> z) const override { amg_vcycle(h_, r, z); }
  using LinearOperator::apply;
  const AmgHierarchy& hierarchy() const { return h_; }

 private:
  AmgHierarchy h_;
};

}  // namespace dpp::linalg
