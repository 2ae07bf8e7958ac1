#pragma once

#include <array>
#include <thread>
#include <utility>
#include <vector>

#include "dpp/assembly.hpp"
#include "dpp/elements.hpp"

namespace dpp::detail {

/// Per-worker contribution buffers. Entries are replayed in chunk order so
/// the assembled matrix does not depend on the worker count.
struct Sink {
  std::array<std::array<std::vector<linalg::Triplet>, kNumFields>, kNumFields> mat;
  std::array<std::vector<std::pair<int, double>>, kNumFields> vec;

  void add(Field r, Field c, int i, int j, double v) { mat[int(r)][int(c)].push_back({i, j, v}); }
  void rhs(Field r, int i, double v) { vec[int(r)].push_back({i, v}); }
};

template <class Fn>
void run_chunks(int n, int workers, std::vector<Sink>& out, Fn&& fn) {
  workers = std::max(1, std::min(workers, n));
  const std::size_t base = out.size();
  out.resize(base + workers);
  if (workers == 1) {
    fn(0, n, out[base]);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int b = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int e = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([&, b, e, w] { fn(b, e, out[base + w]); });
  }
  for (auto& t : pool) t.join();
}

/// Builds the ten DPP blocks (others empty) and right-hand sides.
void finalize(BlockSystem& sys, const std::vector<Sink>& sinks);


ScalarBasis nodal_basis_at(const CellGeometry& g, CellKind kind, const Vec3& xi);
VectorBasis hdiv_basis_at(const CellGeometry& g, CellKind kind, const Vec3& xi);

/// +1 if `cell` is the facet's plus cell.
inline double flux_sign(const Mesh& m, int cell, int local) {
  return m.facet(m.cell_facet(cell, local)).plus_cell == cell ? 1.0 : -1.0;
}

}  // namespace dpp::detail
