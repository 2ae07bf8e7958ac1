#include "dpp/linalg/csr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dpp::linalg {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

CsrMatrix::CsrMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {
  require(rows >= 0 && cols >= 0, "negative matrix dimension");
}

CsrMatrix::CsrMatrix(int rows, int cols, std::vector<int> row_ptr, std::vector<int> col_idx,
                     std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), values_(std::move(values)) {
  validate();
}

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::span<const Triplet> t) {
  CsrMatrix m(rows, cols);
  for (const auto& e : t) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::out_of_range("triplet (" + std::to_string(e.row) + ", " + std::to_string(e.col) + ") out of range");
    ++m.row_ptr_[e.row + 1];
  }
  std::partial_sum(m.row_ptr_.begin(), m.row_ptr_.end(), m.row_ptr_.begin());
  // bucket by row, keeping insertion order inside each row
  std::vector<int> cursor(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
  std::vector<int> order(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) order[cursor[t[i].row]++] = static_cast<int>(i);

  std::vector<int> new_ptr(rows + 1, 0);
  m.col_idx_.reserve(t.size());
  m.values_.reserve(t.size());
  for (int r = 0; r < rows; ++r) {
    auto b = order.begin() + m.row_ptr_[r], e = order.begin() + m.row_ptr_[r + 1];
    std::stable_sort(b, e, [&](int a, int c) { return t[a].col < t[c].col; });
    for (auto it = b; it != e; ++it) {
      const auto& tr = t[*it];
      if (!m.col_idx_.empty() && static_cast<int>(m.col_idx_.size()) > new_ptr[r] && m.col_idx_.back() == tr.col)
        m.values_.back() += tr.value;
      else {
        m.col_idx_.push_back(tr.col);
        m.values_.push_back(tr.value);
      }
    }
    new_ptr[r + 1] = static_cast<int>(m.col_idx_.size());
  }
  m.row_ptr_ = std::move(new_ptr);
  return m;
}

CsrMatrix CsrMatrix::identity(int n) {
  std::vector<double> ones(n, 1.0);
  return diagonal(ones);
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> d) {
  const int n = static_cast<int>(d.size());
  std::vector<int> ptr(n + 1), idx(n);
  std::iota(ptr.begin(), ptr.end(), 0);
  std::iota(idx.begin(), idx.end(), 0);
  return CsrMatrix(n, n, std::move(ptr), std::move(idx), std::vector<double>(d.begin(), d.end()));
}

CsrMatrix CsrMatrix::from_dense(int rows, int cols, std::span<const double> dense) {
  require(dense.size() == static_cast<std::size_t>(rows) * cols, "dense size mismatch");
  CsrMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double v = dense[static_cast<std::size_t>(r) * cols + c];
      if (v != 0.0) {
        m.col_idx_.push_back(c);
        m.values_.push_back(v);
      }
    }
    m.row_ptr_[r + 1] = static_cast<int>(m.col_idx_.size());
  }
  return m;
}

int CsrMatrix::find(int r, int c) const {
  if (r < 0 || r >= rows_) return -1;
  const auto b = col_idx_.begin() + row_ptr_[r], e = col_idx_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(b, e, c);
  return (it != e && *it == c) ? static_cast<int>(it - col_idx_.begin()) : -1;
}

double CsrMatrix::at(int r, int c) const {
  const int k = find(r, c);
  return k < 0 ? 0.0 : values_[k];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
    throw std::invalid_argument("spmv dimension mismatch");
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[r] = s;
  }
}

Vector CsrMatrix::operator*(std::span<const double> x) const {
  Vector y(rows_);
  multiply(x, y);
  return y;
}

void CsrMatrix::multiply_add(double alpha, std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != cols_ || static_cast<int>(y.size()) != rows_)
    throw std::invalid_argument("spmv dimension mismatch");
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[r] += alpha * s;
  }
}

CsrMatrix CsrMatrix::transpose() const {
  CsrMatrix t(cols_, rows_);
  for (int c : col_idx_) ++t.row_ptr_[c + 1];
  std::partial_sum(t.row_ptr_.begin(), t.row_ptr_.end(), t.row_ptr_.begin());
  t.col_idx_.resize(col_idx_.size());
  t.values_.resize(values_.size());
  std::vector<int> cursor(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
  for (int r = 0; r < rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const int dst = cursor[col_idx_[k]]++;
      t.col_idx_[dst] = r;
      t.values_[dst] = values_[k];
    }
  return t;
}

Vector CsrMatrix::diagonal_values() const {
  Vector d(std::min(rows_, cols_), 0.0);
  for (int r = 0; r < static_cast<int>(d.size()); ++r) d[r] = at(r, r);
  return d;
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> d(static_cast<std::size_t>(rows_) * cols_, 0.0);
  for (int r = 0; r < rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d[static_cast<std::size_t>(r) * cols_ + col_idx_[k]] = values_[k];
  return d;
}

void CsrMatrix::scale(double s) {
  for (double& v : values_) v *= s;
}

void CsrMatrix::zero_rows(std::span<const int> rows) {
  for (int r : rows)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) values_[k] = 0.0;
}

void CsrMatrix::zero_columns(std::span<const int> cols) {
  std::vector<char> mark(cols_, 0);
  for (int c : cols) mark[c] = 1;
  for (std::size_t k = 0; k < col_idx_.size(); ++k)
    if (mark[col_idx_[k]]) values_[k] = 0.0;
}

void CsrMatrix::validate() const {
  if (rows_ < 0 || cols_ < 0) throw std::logic_error("negative dimension");
  if (static_cast<int>(row_ptr_.size()) != rows_ + 1 || row_ptr_.front() != 0)
    throw std::logic_error("bad row offsets");
  if (row_ptr_.back() != static_cast<int>(col_idx_.size()) || col_idx_.size() != values_.size())
    throw std::logic_error("row offsets do not match entry count");
  for (int r = 0; r < rows_; ++r) {
    if (row_ptr_[r + 1] < row_ptr_[r]) throw std::logic_error("row offsets not monotone");
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (col_idx_[k] < 0 || col_idx_[k] >= cols_) throw std::logic_error("column index out of range");
      if (k > row_ptr_[r] && col_idx_[k] <= col_idx_[k - 1]) throw std::logic_error("columns not strictly increasing");
    }
  }
}

Vector spmv(const CsrMatrix& a, std::span<const double> x) { return a * x; }

CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: dimension mismatch");
  std::vector<int> ptr(a.rows() + 1, 0), idx;
  std::vector<double> val;
  idx.reserve(a.nnz() + b.nnz());
  val.reserve(a.nnz() + b.nnz());
  const auto &ap = a.row_ptr(), &bp = b.row_ptr();
  const auto &ai = a.col_idx(), &bi = b.col_idx();
  const auto &av = a.values(), &bv = b.values();
  for (int r = 0; r < a.rows(); ++r) {
    int i = ap[r], j = bp[r];
    while (i < ap[r + 1] || j < bp[r + 1]) {
      if (j >= bp[r + 1] || (i < ap[r + 1] && ai[i] < bi[j])) {
        idx.push_back(ai[i]);
        val.push_back(alpha * av[i++]);
      } else if (i >= ap[r + 1] || bi[j] < ai[i]) {
        idx.push_back(bi[j]);
        val.push_back(beta * bv[j++]);
      } else {
        idx.push_back(ai[i]);
        val.push_back(alpha * av[i++] + beta * bv[j++]);
      }
    }
    ptr[r + 1] = static_cast<int>(idx.size());
  }
  return CsrMatrix(a.rows(), a.cols(), std::move(ptr), std::move(idx), std::move(val));
}

CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  const int n = b.cols();
  std::vector<int> ptr(a.rows() + 1, 0), idx;
  std::vector<double> val;
  std::vector<int> marker(n, -1);
  std::vector<double> acc(n, 0.0);
  std::vector<int> cols;
  for (int r = 0; r < a.rows(); ++r) {
    cols.clear();
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      const int m = a.col_idx()[k];
      const double av = a.values()[k];
      for (int q = b.row_ptr()[m]; q < b.row_ptr()[m + 1]; ++q) {
        const int c = b.col_idx()[q];
        if (marker[c] != r) {
          marker[c] = r;
          acc[c] = 0.0;
          cols.push_back(c);
        }
        acc[c] += av * b.values()[q];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (int c : cols) {
      idx.push_back(c);
      val.push_back(acc[c]);
    }
    ptr[r + 1] = static_cast<int>(idx.size());
  }
  return CsrMatrix(a.rows(), n, std::move(ptr), std::move(idx), std::move(val));
}

CsrMatrix scale_rows(std::span<const double> d, const CsrMatrix& a) {
  if (static_cast<int>(d.size()) != a.rows()) throw std::invalid_argument("scale_rows: dimension mismatch");
  CsrMatrix out = a;
  auto& v = out.values();
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) v[k] *= d[r];
  return out;
}

CsrMatrix extract(const CsrMatrix& a, std::span<const int> rows, std::span<const int> cols) {
  std::vector<int> col_map(a.cols(), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= a.cols()) throw std::out_of_range("extract: column index out of range");
    col_map[cols[j]] = static_cast<int>(j);
  }
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || r >= a.rows()) throw std::out_of_range("extract: row index out of range");
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      const int c = col_map[a.col_idx()[k]];
      if (c >= 0) t.push_back({static_cast<int>(i), c, a.values()[k]});
    }
  }
  return CsrMatrix::from_triplets(static_cast<int>(rows.size()), static_cast<int>(cols.size()), t);
}

double max_abs_diff(const CsrMatrix& a, const CsrMatrix& b) {
  const CsrMatrix d = add(a, b, 1.0, -1.0);
  double m = 0.0;
  for (double v : d.values()) m = std::max(m, std::abs(v));
  return m;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace dpp::linalg
