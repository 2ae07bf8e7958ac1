#pragma once

#include <span>

#include "dpp/linalg/csr.hpp"

namespace dpp::linalg {

/// Square linear map y = Op(x).
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual int size() const = 0;
  virtual void apply(std::span<const double> x, std::span<double> y) const = 0;

  Vector apply(std::span<const double> x) const {
    Vector y(size());
    apply(x, y);
    return y;
  }
};

class MatrixOperator final : public LinearOperator {
 public:
  explicit MatrixOperator(const CsrMatrix& a);
  int size() const override { return a_.rows(); }
  void apply(std::span<const double> x, std::span<double> y) const override { a_.multiply(x, y); }
  using LinearOperator::apply;

 private:
  const CsrMatrix& a_;
};

class IdentityOperator final : public LinearOperator {
 public:
  explicit IdentityOperator(int n) : n_(n) {}
  int size() const override { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const override;
  using LinearOperator::apply;

 private:
  int n_;
};

/// Pointwise division by a stored diagonal.
class JacobiOperator final : public LinearOperator {
 public:
  explicit JacobiOperator(Vector diag);
  int size() const override { return static_cast<int>(inv_.size()); }
  void apply(std::span<const double> x, std::span<double> y) const override;
  using LinearOperator::apply;

 private:
  Vector inv_;
};

}  // namespace dpp::linalg
