#include "dpp/linalg/ilu0.hpp"

#include <stdexcept>
#include <string>

namespace dpp::linalg {

Ilu0::Ilu0(const CsrMatrix& a) : lu_(a), diag_(a.rows(), -1) {
  if (!a.is_square()) throw std::invalid_argument("ILU(0) needs a square matrix");
  const int n = a.rows();
  const auto& ptr = lu_.row_ptr();
  const auto& idx = lu_.col_idx();
  auto& val = lu_.values();
  for (int i = 0; i < n; ++i) {
    diag_[i] = lu_.find(i, i);
    if (diag_[i] < 0) throw std::runtime_error("ILU(0): missing diagonal in row " + std::to_string(i));
  }
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int k = ptr[i]; k < ptr[i + 1]; ++k) pos[idx[k]] = k;
    for (int k = ptr[i]; k < ptr[i + 1] && idx[k] < i; ++k) {
      const int col = idx[k];
      const double piv = val[diag_[col]];
      const double l = val[k] / piv;
      val[k] = l;
      if (l == 0.0) continue;
      for (int q = diag_[col] + 1; q < ptr[col + 1]; ++q) {
        const int p = pos[idx[q]];
        if (p >= 0) val[p] -= l * val[q];
      }
    }
    if (val[diag_[i]] == 0.0) throw std::runtime_error("ILU(0): zero pivot in row " + std::to_string(i));
    for (int k = ptr[i]; k < ptr[i + 1]; ++k) pos[idx[k]] = -1;
  }
}

void Ilu0::apply(std::span<const double> r, std::span<double> z) const {
  const int n = lu_.rows();
  const auto& ptr = lu_.row_ptr();
  const auto& idx = lu_.col_idx();
  const auto& val = lu_.values();
  for (int i = 0; i < n; ++i) {
    double s = r[i];
    for (int k = ptr[i]; k < diag_[i]; ++k) s -= val[k] * z[idx[k]];
    z[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = z[i];
    for (int k = diag_[i] + 1; k < ptr[i + 1]; ++k) s -= val[k] * z[idx[k]];
    z[i] = s / val[diag_[i]];
  }
}

Ilu0 ilu0(const CsrMatrix& a) { return Ilu0(a); }

Vector apply_ilu0(const Ilu0& fact, std::span<const double> r) { return fact.apply(r); }

}  // namespace dpp::linalg
