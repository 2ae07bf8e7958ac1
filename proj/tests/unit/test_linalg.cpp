#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "dpp/linalg/amg.hpp"
#include "dpp/linalg/csr.hpp"
#include "dpp/linalg/gmres.hpp"
#include "dpp/linalg/ilu0.hpp"
#include "dpp/linalg/matrix_market.hpp"
#include "dpp/linalg/schur.hpp"

using namespace dpp::linalg;

namespace {

Eigen::MatrixXd dense(const CsrMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) d(r, a.col_idx()[k]) = a.values()[k];
  return d;
}

CsrMatrix random_sparse(int rows, int cols, double fill, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), p(0.0, 1.0);
  std::vector<Triplet> t;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (p(rng) < fill) t.push_back({r, c, u(rng)});
  return CsrMatrix::from_triplets(rows, cols, t);
}

Vector random_vector(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (double& x : v) x = u(rng);
  return v;
}

CsrMatrix poisson_1d(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return CsrMatrix::from_triplets(n, n, t);
}

CsrMatrix poisson_2d(int m) {
  std::vector<Triplet> t;
  auto id = [m](int i, int j) { return i + m * j; };
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      t.push_back({id(i, j), id(i, j), 4.0});
      if (i > 0) t.push_back({id(i, j), id(i - 1, j), -1.0});
      if (i + 1 < m) t.push_back({id(i, j), id(i + 1, j), -1.0});
      if (j > 0) t.push_back({id(i, j), id(i, j - 1), -1.0});
      if (j + 1 < m) t.push_back({id(i, j), id(i, j + 1), -1.0});
    }
  return CsrMatrix::from_triplets(m * m, m * m, t);
}

double rel_residual(const CsrMatrix& a, const Vector& x, const Vector& b) {
  Vector r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return norm2(r) / norm2(b);
}

}  // namespace

TEST(Csr, TripletsSumDuplicatesAndSort) {
  const std::vector<Triplet> t = {{0, 2, 1.0}, {0, 0, 2.0}, {0, 2, 3.0}, {1, 1, -1.0}, {1, 1, 1.0}};
  const CsrMatrix a = CsrMatrix::from_triplets(2, 3, t);
  EXPECT_NO_THROW(a.validate());
  EXPECT_EQ(a.nnz(), 3);
  EXPECT_DOUBLE_EQ(a.at(0, 2), 4.0);
  EXPECT_DOUBLE_EQ(a.at(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(a.at(1, 1), 0.0);
  EXPECT_EQ(a.find(1, 1), 2);
  EXPECT_THROW(CsrMatrix::from_triplets(2, 2, std::vector<Triplet>{{2, 0, 1.0}}), std::out_of_range);
}

TEST(Csr, SpmvExamples) {
  std::mt19937 rng(1);
  const Vector x = random_vector(5, rng);
  EXPECT_EQ(CsrMatrix::identity(5) * x, x);
  const Vector zero = CsrMatrix(5, 5) * x;
  for (double v : zero) EXPECT_EQ(v, 0.0);
  const CsrMatrix a = random_sparse(5, 5, 0.6, rng);
  const Eigen::VectorXd ex = dense(a) * Eigen::Map<const Eigen::VectorXd>(x.data(), 5);
  const Vector y = spmv(a, x);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(y[i], ex[i], 1e-14);
  EXPECT_THROW(a * Vector(4), std::invalid_argument);
}

TEST(Csr, AlgebraMatchesDense) {
  std::mt19937 rng(2);
  const CsrMatrix a = random_sparse(7, 5, 0.4, rng), b = random_sparse(5, 6, 0.4, rng), c = random_sparse(7, 5, 0.3, rng);
  EXPECT_NEAR((dense(multiply(a, b)) - dense(a) * dense(b)).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  EXPECT_NEAR((dense(add(a, c, 2.0, -3.0)) - (2.0 * dense(a) - 3.0 * dense(c))).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  EXPECT_EQ(dense(a.transpose()), dense(a).transpose());
  const std::vector<int> rows = {6, 0, 3}, cols = {4, 1};
  const Eigen::MatrixXd sub = dense(extract(a, rows, cols));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(sub(i, j), dense(a)(rows[i], cols[j]));
  EXPECT_NEAR(max_abs_diff(a, a), 0.0, 0.0);
}

TEST(Csr, ZeroRowsAndColumns) {
  CsrMatrix a = poisson_1d(4);
  a.zero_rows(std::vector<int>{0});
  a.zero_columns(std::vector<int>{3});
  EXPECT_EQ(a.at(0, 0), 0.0);
  EXPECT_EQ(a.at(2, 3), 0.0);
  EXPECT_EQ(a.at(1, 1), 2.0);
  EXPECT_EQ(a.nnz(), poisson_1d(4).nnz());
}

TEST(DenseLu, SolvesAndDetectsSingular) {
  std::mt19937 rng(4);
  const CsrMatrix a = add(random_sparse(8, 8, 0.5, rng), CsrMatrix::identity(8), 1.0, 4.0);
  const Vector b = random_vector(8, rng);
  const DenseLu lu(8, a.to_dense());
  EXPECT_LT(rel_residual(a, lu.solve(b), b), 1e-14);
  EXPECT_THROW(DenseLu(2, {1.0, 2.0, 2.0, 4.0}), std::runtime_error);
}

TEST(Gmres, IdentityConvergesInOneIteration) {
  std::mt19937 rng(5);
  const CsrMatrix eye = CsrMatrix::identity(12);
  const MatrixOperator op(eye);
  const Vector b = random_vector(12, rng);
  Vector x;
  const KrylovStats st = gmres(op, nullptr, b, x);
  EXPECT_TRUE(st.converged);
  EXPECT_EQ(st.iterations, 1);
  EXPECT_EQ(st.termination, Termination::HappyBreakdown);
  for (int i = 0; i < 12; ++i) EXPECT_NEAR(x[i], b[i], 1e-15);
}

TEST(Gmres, DiagonallyDominantMatchesDense) {
  std::mt19937 rng(6);
  CsrMatrix a = random_sparse(10, 10, 0.5, rng);
  Vector d(10);
  for (int i = 0; i < 10; ++i) {
    double s = 0.0;
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k) s += std::abs(a.values()[k]);
    d[i] = s + 1.0;
  }
  CsrMatrix spd = add(add(a, a.transpose()), CsrMatrix::diagonal(d), 0.5, 2.0);
  const Vector b = random_vector(10, rng);
  Vector x;
  const MatrixOperator op(spd);
  GmresOptions o;
  o.rtol = 1e-10;
  const KrylovStats st = gmres(op, nullptr, b, x, o);
  ASSERT_TRUE(st.converged);
  EXPECT_LE(st.relative_residual, 1e-10);
  const Eigen::VectorXd ex = dense(spd).lu().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), 10));
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(x[i], ex[i], 1e-8);
}

TEST(Gmres, RestartedRotationStillConverges) {
  // near-rotation: full GMRES needs all four steps
  const std::vector<double> m = {0.1, -1.0, 0.0, 0.0, 1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.2, -1.0, 0.0, 0.0, 1.0, 0.2};
  const CsrMatrix a = CsrMatrix::from_dense(4, 4, m);
  const MatrixOperator op(a);
  const Vector b = {1.0, 0.0, 1.0, 0.0};
  GmresOptions full, restarted;
  full.rtol = restarted.rtol = 1e-10;
  restarted.restart = 2;
  Vector x1, x2;
  const KrylovStats s1 = gmres(op, nullptr, b, x1, full);
  const KrylovStats s2 = gmres(op, nullptr, b, x2, restarted);
  ASSERT_TRUE(s1.converged);
  ASSERT_TRUE(s2.converged);
  EXPECT_GT(s2.iterations, s1.iterations);
  EXPECT_GT(s2.restarts, 0);
  EXPECT_LT(rel_residual(a, x2, b), 1e-10);
}

TEST(Gmres, ResidualMonotoneWithinRestartWindow) {
  const CsrMatrix a = poisson_2d(12);
  const MatrixOperator op(a);
  std::mt19937 rng(8);
  const Vector b = random_vector(a.rows(), rng);
  Vector x;
  GmresOptions o;
  o.restart = 10;
  const KrylovStats st = gmres(op, nullptr, b, x, o);
  ASSERT_TRUE(st.converged);
  for (std::size_t i = 1; i < st.residual_history.size(); ++i) {
    if (i % 10 == 0) continue;  // new window
    EXPECT_LE(st.residual_history[i], st.residual_history[i - 1] * (1.0 + 1e-12));
  }
}

TEST(Gmres, ReportsMaxIterations) {
  const CsrMatrix a = poisson_2d(20);
  const MatrixOperator op(a);
  const Vector b(a.rows(), 1.0);
  Vector x;
  GmresOptions o;
  o.max_iterations = 5;
  const KrylovStats st = gmres(op, nullptr, b, x, o);
  EXPECT_FALSE(st.converged);
  EXPECT_EQ(st.termination, Termination::MaxIterations);
  EXPECT_EQ(st.iterations, 5);
}

TEST(Gmres, ZeroRightHandSide) {
  const CsrMatrix a = poisson_1d(5);
  Vector x(5, 3.0);
  const KrylovStats st = gmres(MatrixOperator(a), nullptr, Vector(5, 0.0), x);
  EXPECT_TRUE(st.converged);
  EXPECT_EQ(st.iterations, 0);
  for (double v : x) EXPECT_EQ(v, 0.0);
}

TEST(Gmres, TrueResidualIsChecked) {
  // badly scaled preconditioner: preconditioned residual is small long before the true one
  const CsrMatrix a = poisson_2d(10);
  Vector scale(a.rows(), 1e-6);
  scale[0] = 1.0;
  const JacobiOperator m(Vector(a.rows(), 1e6));
  std::mt19937 rng(9);
  const Vector b = random_vector(a.rows(), rng);
  Vector x;
  const KrylovStats st = gmres(MatrixOperator(a), &m, b, x);
  ASSERT_TRUE(st.converged);
  EXPECT_LE(rel_residual(a, x, b), 1e-7);
}

TEST(Ilu0, TridiagonalIsExact) {
  const CsrMatrix a = poisson_1d(30);
  std::mt19937 rng(10);
  const Vector b = random_vector(30, rng);
  const Ilu0 f = ilu0(a);
  EXPECT_LT(rel_residual(a, apply_ilu0(f, b), b), 1e-12);
}

TEST(Ilu0, DiagonalDivides) {
  const std::vector<double> d = {2.0, 4.0, 8.0};
  const Ilu0 f(CsrMatrix::diagonal(d));
  const Vector z = f.apply(Vector{2.0, 2.0, 2.0});
  EXPECT_DOUBLE_EQ(z[0], 1.0);
  EXPECT_DOUBLE_EQ(z[1], 0.5);
  EXPECT_DOUBLE_EQ(z[2], 0.25);
}

TEST(Ilu0, ZeroPivotAndMissingDiagonal) {
  EXPECT_THROW(Ilu0(CsrMatrix::from_dense(2, 2, std::vector<double>{0.0, 1.0, 1.0, 0.0})), std::runtime_error);
  const std::vector<double> singular = {1.0, 1.0, 1.0, 1.0};
  EXPECT_THROW(Ilu0(CsrMatrix::from_dense(2, 2, singular)), std::runtime_error);
}

TEST(Ilu0, PreservesPatternAndMatchesDenseOnPattern) {
  const CsrMatrix a = poisson_2d(5);
  const Ilu0 f(a);
  EXPECT_EQ(f.factors().col_idx(), a.col_idx());
  // (LU)_ij == A_ij on the pattern
  const int n = a.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n), u = Eigen::MatrixXd::Zero(n, n);
  const CsrMatrix& lu = f.factors();
  for (int r = 0; r < n; ++r)
    for (int k = lu.row_ptr()[r]; k < lu.row_ptr()[r + 1]; ++k) {
      const int c = lu.col_idx()[k];
      (c < r ? l(r, c) : u(r, c)) = lu.values()[k];
    }
  const Eigen::MatrixXd prod = l * u, ad = dense(a);
  for (int r = 0; r < n; ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k)
      EXPECT_NEAR(prod(r, a.col_idx()[k]), ad(r, a.col_idx()[k]), 1e-13);
}

TEST(DiagLump, Examples) {
  EXPECT_EQ(diag_lump(CsrMatrix::identity(3)), Vector(3, 1.0));
  const std::vector<double> d = {2.0, 3.0};
  EXPECT_EQ(diag_lump(CsrMatrix::diagonal(d)), (Vector{2.0, 3.0}));
  EXPECT_THROW(diag_lump(CsrMatrix::from_dense(2, 2, std::vector<double>{0.0, 1.0, 1.0, 1.0})), std::runtime_error);
}

TEST(SchurSelfp, Examples) {
  const CsrMatrix eye = CsrMatrix::identity(2);
  const CsrMatrix s = schur_selfp(eye, eye, Vector{1.0, 1.0}, eye);
  for (double v : s.values()) EXPECT_EQ(v, 0.0);

  std::mt19937 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const int na = 3 + trial * 9, np = 2 + trial * 7;
    const CsrMatrix d = random_sparse(np, np, 0.5, rng), c = random_sparse(np, na, 0.4, rng),
                    b = random_sparse(na, np, 0.4, rng);
    Vector da = random_vector(na, rng);
    for (double& v : da) v += v > 0 ? 1.0 : -1.0;
    const Eigen::VectorXd inv = Eigen::Map<const Eigen::VectorXd>(da.data(), na).cwiseInverse();
    const Eigen::MatrixXd ref = dense(d) - dense(c) * inv.asDiagonal() * dense(b);
    EXPECT_NEAR((dense(schur_selfp(d, c, da, b)) - ref).cwiseAbs().maxCoeff(), 0.0, 1e-13);
  }
  EXPECT_THROW(schur_selfp(eye, eye, Vector{1.0}, eye), std::invalid_argument);
}

TEST(Amg, IdentityIsExact) {
  for (int n : {10, 200}) {
    const AmgHierarchy h = amg_setup(CsrMatrix::identity(n));
    std::mt19937 rng(14);
    const Vector r = random_vector(n, rng);
    const Vector z = amg_vcycle(h, r);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(z[i], r[i], 1e-15);
  }
}

TEST(Amg, Poisson1dReduction) {
  const CsrMatrix a = poisson_1d(63);
  const AmgHierarchy h = amg_setup(a);
  std::mt19937 rng(15);
  const Vector b = random_vector(63, rng);
  const Vector z = amg_vcycle(h, b);
  EXPECT_LT(rel_residual(a, z, b), 0.2);
}

TEST(Amg, Poisson2dHierarchyAndReduction) {
  const CsrMatrix a = poisson_2d(40);
  const AmgHierarchy h = amg_setup(a);
  EXPECT_GE(h.n_levels(), 2);
  EXPECT_LE(h.levels.back().a.rows(), 1000);
  for (int l = 0; l + 1 < h.n_levels(); ++l) {
    const CsrMatrix galerkin = multiply(h.levels[l].r, multiply(h.levels[l].a, h.levels[l].p));
    EXPECT_LT(max_abs_diff(galerkin, h.levels[l + 1].a), 1e-12);
  }
  std::mt19937 rng(16);
  const Vector b = random_vector(a.rows(), rng);
  EXPECT_LT(rel_residual(a, amg_vcycle(h, b), b), 0.9);
  AmgPreconditioner m(a);
  Vector x;
  const KrylovStats st = gmres(MatrixOperator(a), &m, b, x);
  EXPECT_TRUE(st.converged);
  EXPECT_LE(st.iterations, 20);
}

TEST(Amg, LinearAndSymmetric) {
  const CsrMatrix a = poisson_2d(30);
  const AmgHierarchy h = amg_setup(a);
  std::mt19937 rng(17);
  const Vector r1 = random_vector(a.rows(), rng), r2 = random_vector(a.rows(), rng);
  const double al = 0.7, be = -1.3;
  Vector comb(a.rows());
  for (int i = 0; i < a.rows(); ++i) comb[i] = al * r1[i] + be * r2[i];
  const Vector z1 = amg_vcycle(h, r1), z2 = amg_vcycle(h, r2), zc = amg_vcycle(h, comb);
  for (int i = 0; i < a.rows(); ++i) EXPECT_NEAR(zc[i], al * z1[i] + be * z2[i], 1e-10);
  EXPECT_NEAR(dot(r2, z1), dot(r1, z2), 1e-8 * std::max(1.0, std::abs(dot(r2, z1))));
}

TEST(Amg, IsolatedRowsAreHandled) {
  // Dirichlet-style rows: only a diagonal entry
  CsrMatrix a = poisson_2d(20);
  std::vector<int> fixed = {0, 5, 77, 399};
  a.zero_rows(fixed);
  a.zero_columns(fixed);
  for (int i : fixed) a.values()[a.find(i, i)] = 3.0;
  const AmgHierarchy h = amg_setup(a);
  std::mt19937 rng(18);
  const Vector b = random_vector(a.rows(), rng);
  EXPECT_LT(rel_residual(a, amg_vcycle(h, b), b), 0.9);
}

TEST(Amg, RejectsEmptyRow) {
  const std::vector<double> m = {1.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(amg_setup(CsrMatrix::from_dense(2, 2, m)), std::runtime_error);
}

TEST(MatrixMarket, RoundTrip) {
  std::mt19937 rng(19);
  const CsrMatrix a = random_sparse(6, 4, 0.5, rng);
  std::stringstream ss;
  write_matrix_market(ss, a);
  const CsrMatrix back = read_matrix_market(ss);
  EXPECT_EQ(back.rows(), 6);
  EXPECT_EQ(back.cols(), 4);
  EXPECT_EQ(back.col_idx(), a.col_idx());
  EXPECT_EQ(back.values(), a.values());

  const Vector v = random_vector(5, rng);
  std::stringstream vs;
  write_matrix_market(vs, v);
  EXPECT_EQ(read_matrix_market_vector(vs), v);

  std::stringstream sym("%%MatrixMarket matrix coordinate real symmetric\n% c\n2 2 2\n1 1 4\n2 1 -1\n");
  const CsrMatrix s = read_matrix_market(sym);
  EXPECT_EQ(s.at(0, 1), -1.0);
  EXPECT_EQ(s.at(1, 0), -1.0);
  std::stringstream junk("hello\n");
  EXPECT_THROW(read_matrix_market(junk), std::runtime_error);
}
