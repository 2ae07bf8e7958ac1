#include "dpp/linalg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace dpp::linalg {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Header {
  std::string format, field, symmetry;
};

Header read_header(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("MatrixMarket: empty input");
  std::istringstream hs(line);
  std::string banner, object;
  Header h;
  hs >> banner >> object >> h.format >> h.field >> h.symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") throw std::runtime_error("MatrixMarket: bad banner");
  h.format = lower(h.format);
  h.field = lower(h.field);
  h.symmetry = lower(h.symmetry);
  if (h.field != "real" && h.field != "integer" && h.field != "double")
    throw std::runtime_error("MatrixMarket: unsupported field '" + h.field + "'");
  return h;
}

std::string next_data_line(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '%') continue;
    return line;
  }
  throw std::runtime_error("MatrixMarket: unexpected end of input");
}

}  // namespace

void write_matrix_market(std::ostream& os, const CsrMatrix& a) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  os << std::setprecision(17);
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k)
      os << r + 1 << ' ' << a.col_idx()[k] + 1 << ' ' << a.values()[k] << '\n';
}

void write_matrix_market(std::ostream& os, std::span<const double> v) {
  os << "%%MatrixMarket matrix array real general\n";
  os << v.size() << " 1\n";
  os << std::setprecision(17);
  for (double x : v) os << x << '\n';
}

CsrMatrix read_matrix_market(std::istream& is) {
  const Header h = read_header(is);
  if (h.format != "coordinate") throw std::runtime_error("MatrixMarket: expected coordinate format");
  const bool symmetric = h.symmetry == "symmetric";
  if (!symmetric && h.symmetry != "general") throw std::runtime_error("MatrixMarket: unsupported symmetry");
  std::istringstream dims(next_data_line(is));
  int rows = 0, cols = 0, nnz = 0;
  if (!(dims >> rows >> cols >> nnz)) throw std::runtime_error("MatrixMarket: bad size line");
  std::vector<Triplet> t;
  t.reserve(symmetric ? 2 * nnz : nnz);
  for (int e = 0; e < nnz; ++e) {
    std::istringstream ls(next_data_line(is));
    int r = 0, c = 0;
    double v = 0.0;
    if (!(ls >> r >> c >> v)) throw std::runtime_error("MatrixMarket: bad entry line");
    t.push_back({r - 1, c - 1, v});
    if (symmetric && r != c) t.push_back({c - 1, r - 1, v});
  }
  return CsrMatrix::from_triplets(rows, cols, t);
}

Vector read_matrix_market_vector(std::istream& is) {
  const Header h = read_header(is);
  if (h.format != "array") throw std::runtime_error("MatrixMarket: expected array format");
  std::istringstream dims(next_data_line(is));
  int rows = 0, cols = 0;
  if (!(dims >> rows >> cols) || cols != 1) throw std::runtime_error("MatrixMarket: expected a column vector");
  Vector v(rows);
  for (int i = 0; i < rows; ++i) {
    std::istringstream ls(next_data_line(is));
    if (!(ls >> v[i])) throw std::runtime_error("MatrixMarket: bad vector entry");
  }
  return v;
}

void save_matrix_market(const std::string& path, const CsrMatrix& a) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_matrix_market(os, a);
}

void save_matrix_market(const std::string& path, std::span<const double> v) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_matrix_market(os, v);
}

CsrMatrix load_matrix_market(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return read_matrix_market(is);
}

}  // namespace dpp::linalg
