#include "dpp/linalg/amg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dpp::linalg {

namespace {

void gauss_seidel(const CsrMatrix& a, const Vector& diag, std::span<const double> b, std::span<double> x,
                  bool forward) {
  const int n = a.rows();
  const auto& ptr = a.row_ptr();
  const auto& idx = a.col_idx();
  const auto& val = a.values();
  auto row = [&](int i) {
    double s = b[i];
    for (int k = ptr[i]; k < ptr[i + 1]; ++k)
      if (idx[k] != i) s -= val[k] * x[idx[k]];
    x[i] = s / diag[i];
  };
  if (forward)
    for (int i = 0; i < n; ++i) row(i);
  else
    for (int i = n - 1; i >= 0; --i) row(i);
}

std::vector<std::vector<int>> strong_neighbours(const CsrMatrix& a, double theta) {
  const int n = a.rows();
  const Vector d = a.diagonal_values();
  std::vector<std::vector<int>> s(n);
  for (int i = 0; i < n; ++i)
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) {
      const int j = a.col_idx()[k];
      if (j == i) continue;
      const double v = std::abs(a.values()[k]);
      if (v > 0.0 && v >= theta * std::sqrt(std::abs(d[i] * d[j]))) s[i].push_back(j);
    }
  // symmetrize so aggregation does not depend on row/column orientation
  std::vector<std::vector<int>> sym(n);
  for (int i = 0; i < n; ++i)
    for (int j : s[i]) {
      sym[i].push_back(j);
      sym[j].push_back(i);
    }
  for (auto& row : sym) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return sym;
}

}  // namespace

double AmgHierarchy::operator_complexity() const {
  if (levels.empty()) return 0.0;
  double total = 0.0;
  for (const auto& l : levels) total += l.a.nnz();
  return total / std::max(1, levels.front().a.nnz());
}

int aggregate(const CsrMatrix& a, double theta, std::vector<int>& agg) {
  const int n = a.rows();
  const auto s = strong_neighbours(a, theta);
  agg.assign(n, -1);
  int count = 0;
  // pass 1: root nodes whose whole strong neighbourhood is free
  for (int i = 0; i < n; ++i) {
    if (agg[i] >= 0 || s[i].empty()) continue;
    bool free = std::all_of(s[i].begin(), s[i].end(), [&](int j) { return agg[j] < 0; });
    if (!free) continue;
    agg[i] = count;
    for (int j : s[i]) agg[j] = count;
    ++count;
  }
  // pass 2: attach leftovers to a neighbouring aggregate
  std::vector<int> snapshot = agg;
  for (int i = 0; i < n; ++i) {
    if (agg[i] >= 0 || s[i].empty()) continue;
    for (int j : s[i])
      if (snapshot[j] >= 0) {
        agg[i] = snapshot[j];
        break;
      }
  }
  // pass 3: remaining nodes form aggregates with their free neighbours
  for (int i = 0; i < n; ++i) {
    if (agg[i] >= 0 || s[i].empty()) continue;
    agg[i] = count;
    for (int j : s[i])
      if (agg[j] < 0) agg[j] = count;
    ++count;
  }
  return count;
}

AmgHierarchy amg_setup(const CsrMatrix& a, const AmgOptions& opt) {
  if (!a.is_square()) throw std::invalid_argument("AMG needs a square matrix");
  AmgHierarchy h;
  h.options = opt;
  CsrMatrix current = a;
  while (true) {
    AmgLevel lvl;
    lvl.a = current;
    lvl.diag = current.diagonal_values();
    for (int i = 0; i < current.rows(); ++i) {
      if (current.row_ptr()[i + 1] == current.row_ptr()[i])
        throw std::runtime_error("AMG setup: empty row " + std::to_string(i) + " (structurally singular)");
      if (!(lvl.diag[i] > 0.0) && !(lvl.diag[i] < 0.0))
        throw std::runtime_error("AMG setup: zero diagonal in row " + std::to_string(i));
    }
    const int n = current.rows();
    if (n <= opt.max_coarse || h.n_levels() + 1 >= opt.max_levels) {
      h.levels.push_back(std::move(lvl));
      break;
    }
    std::vector<int> agg;
    const int nc = aggregate(current, opt.strength_threshold, agg);
    if (nc == 0 || nc >= n * 0.9) {
      h.levels.push_back(std::move(lvl));
      break;
    }
    std::vector<Triplet> t;
    for (int i = 0; i < n; ++i)
      if (agg[i] >= 0) t.push_back({i, agg[i], 1.0});
    const CsrMatrix tentative = CsrMatrix::from_triplets(n, nc, t);
    // P = (I - w D^{-1} A) P_tent
    Vector scale(n);
    for (int i = 0; i < n; ++i) scale[i] = -opt.jacobi_weight / lvl.diag[i];
    const CsrMatrix dap = scale_rows(scale, multiply(current, tentative));
    lvl.p = add(tentative, dap);
    lvl.r = lvl.p.transpose();
    current = multiply(lvl.r, multiply(current, lvl.p));
    h.levels.push_back(std::move(lvl));
  }
  const CsrMatrix& coarse = h.levels.back().a;
  h.coarse_direct = coarse.rows() <= std::max(opt.max_coarse, 1000);
  if (h.coarse_direct) {
    try {
      h.coarse_lu = DenseLu(coarse.rows(), coarse.to_dense());
    } catch (const std::runtime_error&) {
      throw std::runtime_error("AMG setup: coarsest operator is singular");
    }
  }
  return h;
}

namespace {

void vcycle_level(const AmgHierarchy& h, int l, std::span<const double> b, std::span<double> x) {
  const AmgLevel& lvl = h.levels[l];
  const int n = lvl.a.rows();
  if (l + 1 == h.n_levels()) {
    if (h.coarse_direct) {
      h.coarse_lu.solve(b, x);
    } else {
      std::fill(x.begin(), x.end(), 0.0);
      for (int s = 0; s < h.options.stalled_sweeps; ++s) {
        gauss_seidel(lvl.a, lvl.diag, b, x, true);
        gauss_seidel(lvl.a, lvl.diag, b, x, false);
      }
    }
    return;
  }
  std::fill(x.begin(), x.end(), 0.0);
  for (int s = 0; s < h.options.pre_sweeps; ++s) gauss_seidel(lvl.a, lvl.diag, b, x, true);
  Vector res(n);
  lvl.a.multiply(x, res);
  for (int i = 0; i < n; ++i) res[i] = b[i] - res[i];
  const int nc = lvl.p.cols();
  Vector bc(nc), xc(nc);
  lvl.r.multiply(res, bc);
  vcycle_level(h, l + 1, bc, xc);
  lvl.p.multiply_add(1.0, xc, x);
  for (int s = 0; s < h.options.post_sweeps; ++s) gauss_seidel(lvl.a, lvl.diag, b, x, false);
}

}  // namespace

void amg_vcycle(const AmgHierarchy& h, std::span<const double> r, std::span<double> z) {
  if (h.levels.empty()) throw std::logic_error("AMG hierarchy is empty");
  if (static_cast<int>(r.size()) != h.levels.front().a.rows() || z.size() != r.size())
    throw std::invalid_argument("AMG V-cycle: size mismatch");
  vcycle_level(h, 0, r, z);
}

Vector amg_vcycle(const AmgHierarchy& h, std::span<const double> r) {
  Vector z(r.size());
  amg_vcycle(h, r, z);
  return z;
}

}  // namespace dpp::linalg
