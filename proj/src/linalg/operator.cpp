#include "dpp/linalg/operator.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpp::linalg {

MatrixOperator::MatrixOperator(const CsrMatrix& a) : a_(a) {
  if (!a.is_square()) throw std::invalid_argument("operator matrix must be square");
}

void IdentityOperator::apply(std::span<const double> x, std::span<double> y) const {
  std::copy(x.begin(), x.end(), y.begin());
}

JacobiOperator::JacobiOperator(Vector diag) : inv_(std::move(diag)) {
  for (double& d : inv_) {
    if (d == 0.0) throw std::runtime_error("zero diagonal entry");
    d = 1.0 / d;
  }
}

void JacobiOperator::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < inv_.size(); ++i) y[i] = inv_[i] * x[i];
}

}  // namespace dpp::linalg
