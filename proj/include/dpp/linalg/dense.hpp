#pragma once

#include <span>
#include <vector>

namespace dpp::linalg {

/// LU factorization with partial pivoting of a small dense matrix.
class DenseLu {
 public:
  DenseLu() = default;
  /// `a` is row-major n x n. Throws std::runtime_error if singular.
  DenseLu(int n, std::vector<double> a);

  int size() const { return n_; }
  void solve(std::span<const double> b, std::span<double> x) const;
  std::vector<double> solve(std::span<const double> b) const;

 private:
  int n_ = 0;
  std::vector<double> lu_;
  std::vector<int> perm_;
};

}  // namespace dpp::linalg
