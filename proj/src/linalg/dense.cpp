#include "dpp/linalg/dense.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace dpp::linalg {

DenseLu::DenseLu(int n, std::vector<double> a) : n_(n), lu_(std::move(a)), perm_(n) {
  if (static_cast<int>(lu_.size()) != n * n) throw std::invalid_argument("DenseLu: size mismatch");
  std::iota(perm_.begin(), perm_.end(), 0);
  double scale = 0.0;
  for (double v : lu_) scale = std::max(scale, std::abs(v));
  auto at = [&](int r, int c) -> double& { return lu_[static_cast<std::size_t>(r) * n + c]; };
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(at(r, k)) > std::abs(at(p, k))) p = r;
    if (std::abs(at(p, k)) <= 1e-14 * scale || at(p, k) == 0.0) throw std::runtime_error("DenseLu: matrix is singular");
    if (p != k) {
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      std::swap(perm_[k], perm_[p]);
    }
    const double inv = 1.0 / at(k, k);
    for (int r = k + 1; r < n; ++r) {
      const double l = at(r, k) * inv;
      at(r, k) = l;
      if (l == 0.0) continue;
      for (int c = k + 1; c < n; ++c) at(r, c) -= l * at(k, c);
    }
  }
}

void DenseLu::solve(std::span<const double> b, std::span<double> x) const {
  if (static_cast<int>(b.size()) != n_ || static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("DenseLu::solve: size mismatch");
  std::vector<double> y(n_);
  for (int i = 0; i < n_; ++i) y[i] = b[perm_[i]];
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < i; ++j) y[i] -= lu_[static_cast<std::size_t>(i) * n_ + j] * y[j];
  for (int i = n_ - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < n_; ++j) s -= lu_[static_cast<std::size_t>(i) * n_ + j] * x[j];
    x[i] = s / lu_[static_cast<std::size_t>(i) * n_ + i];
  }
}

std::vector<double> DenseLu::solve(std::span<const double> b) const {
  std::vector<double> x(n_);
  solve(b, x);
  return x;
}

}  // namespace dpp::linalg
