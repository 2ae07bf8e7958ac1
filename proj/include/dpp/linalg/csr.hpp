#pragma once

#include <span>
#include <vector>

namespace dpp::linalg {

using Vector = std::vector<double>;

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Empty (all-zero) matrix of the given shape.
  CsrMatrix(int rows, int cols);
  CsrMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx, std::vector<double> values);

  /// Duplicates are summed in insertion order, so the result only depends on
  /// the order of `triplets`. Explicit zeros are kept in the pattern.
  static CsrMatrix from_triplets(int rows, int cols, std::span<const Triplet> triplets);
  static CsrMatrix identity(int n);
  static CsrMatrix diagonal(std::span<const double> d);
  /// Row-major dense input; entries with |a| == 0 are dropped.
  static CsrMatrix from_dense(int rows, int cols, std::span<const double> dense);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }
  bool is_square() const { return rows_ == cols_; }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Entry (r, c), zero if not stored.
  double at(int r, int c) const;
  /// Index into values() of entry (r, c), or -1.
  int find(int r, int c) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  Vector operator*(std::span<const double> x) const;
  /// y += alpha A x
  void multiply_add(double alpha, std::span<const double> x, std::span<double> y) const;

  CsrMatrix transpose() const;
  Vector diagonal_values() const;
  std::vector<double> to_dense() const;
  void scale(double s);

  /// Zeroes the listed rows (pattern kept).
  void zero_rows(std::span<const int> rows);
  /// Zeroes the listed columns (pattern kept).
  void zero_columns(std::span<const int> cols);

  /// Throws std::logic_error if the structural invariants are violated.
  void validate() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

Vector spmv(const CsrMatrix& a, std::span<const double> x);

/// alpha A + beta B
CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha = 1.0, double beta = 1.0);
/// A B
CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b);
/// diag(d) A
CsrMatrix scale_rows(std::span<const double> d, const CsrMatrix& a);
/// A(rows, cols)
CsrMatrix extract(const CsrMatrix& a, std::span<const int> rows, std::span<const int> cols);
/// max |A - B| over the union of both patterns.
double max_abs_diff(const CsrMatrix& a, const CsrMatrix& b);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace dpp::linalg
