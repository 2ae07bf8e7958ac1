#include "dpp/linalg/schur.hpp"

#include <stdexcept>
#include <string>

namespace dpp::linalg {

Vector diag_lump(const CsrMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("diag_lump needs a square matrix");
  Vector d = a.diagonal_values();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] == 0.0) throw std::runtime_error("diag_lump: zero diagonal entry in row " + std::to_string(i));
  return d;
}

CsrMatrix schur_selfp(const CsrMatrix& d, const CsrMatrix& c, std::span<const double> diag_a, const CsrMatrix& b) {
  if (c.cols() != static_cast<int>(diag_a.size()) || b.rows() != static_cast<int>(diag_a.size()) ||
      d.rows() != c.rows() || d.cols() != b.cols())
    throw std::invalid_argument("schur_selfp: dimension mismatch");
  Vector inv(diag_a.size());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (diag_a[i] == 0.0) throw std::invalid_argument("schur_selfp: zero entry in diag(A)");
    inv[i] = 1.0 / diag_a[i];
  }
  return add(d, multiply(c, scale_rows(inv, b)), 1.0, -1.0);
}

}  // namespace dpp::linalg
