#pragma once

#include "dpp/linalg/operator.hpp"

namespace dpp::linalg {

/// Incomplete LU with zero fill. L (unit lower) and U share A's pattern.
class Ilu0 final : public LinearOperator {
 public:
  /// Throws std::runtime_error on a missing or zero pivot.
  explicit Ilu0(const CsrMatrix& a);

  int size() const override { return lu_.rows(); }
  /// One forward/backward sweep: z = (LU)^{-1} r.
  void apply(std::span<const double> r, std::span<double> z) const override;
  using LinearOperator::apply;

  const CsrMatrix& factors() const { return lu_; }

 private:
  CsrMatrix lu_;
  std::vector<int> diag_;
};

Ilu0 ilu0(const CsrMatrix& a);
Vector apply_ilu0(const Ilu0& fact, std::span<const double> r);

}  // namespace dpp::linalg
