#pragma once

#include <Eigen/Dense>
#include <random>

#include "dpp/assembly.hpp"
#include "dpp/linalg/csr.hpp"

namespace testing_helpers {

inline Eigen::MatrixXd dense(const dpp::linalg::CsrMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) d(r, a.col_idx()[k]) = a.values()[k];
  return d;
}

inline dpp::linalg::Vector random_vector(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  dpp::linalg::Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

/// Dense LU solve of the monolithic system (oracle).
inline dpp::linalg::Vector dense_solve(const dpp::BlockSystem& sys) {
  const dpp::MonolithicSystem mono = dpp::monolithic_view(sys);
  const Eigen::MatrixXd k = dense(mono.matrix);
  const Eigen::VectorXd f = Eigen::Map<const Eigen::VectorXd>(mono.rhs.data(), mono.rhs.size());
  const Eigen::VectorXd x = k.partialPivLu().solve(f);
  return {x.data(), x.data() + x.size()};
}

inline double rel_diff(const dpp::linalg::Vector& a, const dpp::linalg::Vector& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace testing_helpers
