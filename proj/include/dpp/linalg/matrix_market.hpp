#pragma once

#include <iosfwd>
#include <string>

#include "dpp/linalg/csr.hpp"

namespace dpp::linalg {

/// "%%MatrixMarket matrix coordinate real general", 1-based indices.
void write_matrix_market(std::ostream& os, const CsrMatrix& a);
/// "%%MatrixMarket matrix array real general" column vector.
void write_matrix_market(std::ostream& os, std::span<const double> v);

/// Reads coordinate real/integer matrices, general or symmetric.
CsrMatrix read_matrix_market(std::istream& is);
/// Reads an array-format column vector.
Vector read_matrix_market_vector(std::istream& is);

void save_matrix_market(const std::string& path, const CsrMatrix& a);
void save_matrix_market(const std::string& path, std::span<const double> v);
CsrMatrix load_matrix_market(const std::string& path);

}  // namespace dpp::linalg
