#pragma once

#include "dpp/linalg/csr.hpp"

namespace dpp::linalg {

/// Diagonal of a square matrix. Throws std::runtime_error on a zero entry.
Vector diag_lump(const CsrMatrix& a);

/// S_p = D - C diag(A)^{-1} B.
CsrMatrix schur_selfp(const CsrMatrix& d, const CsrMatrix& c, std::span<const double> diag_a, const CsrMatrix& b);

}  // namespace dpp::linalg
