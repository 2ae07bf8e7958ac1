#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dpp/problem.hpp"

using namespace dpp;

namespace {

// central differences on the exact fields only, independent of the closed-form derivatives
PdeResidual fd_residual(const ManufacturedSolution& s, const Vec3& x) {
  const double h = 1e-5;
  const auto& p = s.params();
  Vec3 gp1{}, gp2{};
  double div1 = 0.0, div2 = 0.0;
  for (int a = 0; a < s.dim(); ++a) {
    Vec3 xp = x, xm = x;
    xp[a] += h;
    xm[a] -= h;
    const ExactFields fp = s(xp), fm = s(xm);
    gp1[a] = (fp.p1 - fm.p1) / (2 * h);
    gp2[a] = (fp.p2 - fm.p2) / (2 * h);
    div1 += (fp.u1[a] - fm.u1[a]) / (2 * h);
    div2 += (fp.u2[a] - fm.u2[a]) / (2 * h);
  }
  const ExactFields f = s(x);
  PdeResidual r;
  r.darcy1 = norm((p.mu / p.k1) * f.u1 + gp1 - p.gamma_b);
  r.darcy2 = norm((p.mu / p.k2) * f.u2 + gp2 - p.gamma_b);
  r.mass1 = div1 + p.beta / p.mu * (f.p1 - f.p2);
  r.mass2 = div2 - p.beta / p.mu * (f.p1 - f.p2);
  return r;
}

}  // namespace

TEST(Eta, Examples) {
  DppParameters p;
  EXPECT_NEAR(eta(p), std::sqrt(11.0), 1e-12);
  p.k2 = 1.0;
  EXPECT_NEAR(eta(p), std::sqrt(2.0), 1e-15);
  p.beta = 3.0;
  p.k1 = 2.0;
  p.k2 = 1.0;
  EXPECT_NEAR(eta(p), std::sqrt(4.5), 1e-15);
  p.beta = -1.0;
  EXPECT_THROW(eta(p), std::invalid_argument);
}

TEST(Eta, SymmetricInPermeabilities) {
  DppParameters a, b;
  a.k1 = 0.37;
  a.k2 = 4.2;
  b.k1 = 4.2;
  b.k2 = 0.37;
  EXPECT_DOUBLE_EQ(eta(a), eta(b));
  EXPECT_DOUBLE_EQ(eta(DppParameters::benchmark_3d()), eta(DppParameters::benchmark_2d()));
}

TEST(Exact2d, OriginValues) {
  const auto s = exact_solution_2d(DppParameters::benchmark_2d());
  const ExactFields f = s({0.0, 0.0, 0.0});
  EXPECT_NEAR(f.p1, -1.0, 1e-15);
  EXPECT_NEAR(f.p2, 10.0, 1e-14);
  EXPECT_NEAR(f.u1[0], 0.0, 1e-15);
  EXPECT_NEAR(f.u1[1], std::sqrt(11.0) - 1.0, 1e-14);
}

TEST(Exact2d, ResidualVanishes) {
  const auto s = exact_solution_2d(DppParameters::benchmark_2d());
  EXPECT_LT(s.residual({0.3, 0.7, 0.0}).max_abs(), 1e-8);
  EXPECT_LT(fd_residual(s, {0.3, 0.7, 0.0}).max_abs(), 1e-5);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 x{u(rng), u(rng), 0.0};
    EXPECT_LT(s.residual(x).max_abs(), 1e-8);
    EXPECT_NEAR(s.residual(x).mass1, 0.0, 1e-8);
    EXPECT_NEAR(s.residual(x).mass2, 0.0, 1e-8);
  }
}

TEST(Exact2d, ResidualVanishesForOtherParameters) {
  DppParameters p;
  p.mu = 2.5;
  p.beta = 0.7;
  p.k1 = 3.0;
  p.k2 = 0.2;
  const auto s = exact_solution_2d(p);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Vec3 x{u(rng), u(rng), 0.0};
    EXPECT_LT(s.residual(x).max_abs(), 1e-8);
    EXPECT_LT(fd_residual(s, x).max_abs(), 1e-4);
  }
}

TEST(Exact3d, OriginValues) {
  const auto s = exact_solution_3d(DppParameters::benchmark_3d());
  const ExactFields f = s({0.0, 0.0, 0.0});
  EXPECT_NEAR(f.p1, -2.0, 1e-15);
  EXPECT_NEAR(f.u2[0], 0.0, 1e-15);
}

// The symmetric micro pressure satisfies every equation; the k1 form
// breaks the micro Darcy law and both mass balances.
TEST(Exact3d, K1MicroPressureFailsResidual) {
  const auto sym = exact_solution_3d(DppParameters::benchmark_3d(), Micro3dVariant::Symmetric);
  const auto k1form = exact_solution_3d(DppParameters::benchmark_3d(), Micro3dVariant::K1Exponent);
  const Vec3 x{0.2, 0.5, 0.8};
  EXPECT_LT(sym.residual(x).max_abs(), 1e-8);
  EXPECT_LT(fd_residual(sym, x).max_abs(), 1e-4);
  const PdeResidual r = k1form.residual(x);
  const PdeResidual rfd = fd_residual(k1form, x);
  EXPECT_GT(r.darcy2, 1.0);
  EXPECT_GT(std::abs(r.mass1), 1.0);
  EXPECT_NEAR(r.darcy2, rfd.darcy2, 1e-4);
  EXPECT_LT(r.darcy1, 1e-8);
  std::cout << "[ info ] 3D micro pressure residual at (0.2,0.5,0.8): k1 form " << r.max_abs()
            << ", symmetric " << sym.residual(x).max_abs() << "\n";

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 y{u(rng), u(rng), u(rng)};
    EXPECT_LT(sym.residual(y).max_abs(), 1e-8);
  }
}

TEST(Exact3d, SymmetricVariantIsDefault) {
  const auto def = exact_solution_3d(DppParameters::benchmark_3d());
  EXPECT_EQ(def.name(), "benchmark-3d");
  EXPECT_NEAR(def({0, 0, 0}).p2, 20.0, 1e-13);
  EXPECT_NEAR(exact_solution_3d(DppParameters::benchmark_3d(), Micro3dVariant::K1Exponent)({0, 0, 0}).p2, 2.0, 1e-14);
}

TEST(Boundary, TraceExamples) {
  const auto p = DppParameters::benchmark_2d();
  const auto s = exact_solution_2d(p);
  Mesh m = generate_unit_mesh(2, CellKind::Quad, 2);
  const BoundarySpec b = boundary_data(s, m);
  EXPECT_NO_THROW(b.validate(m));
  const double pi = std::numbers::pi;
  const double expected = std::exp(pi) * std::sin(pi / 2) / pi - std::exp(std::sqrt(11.0) / 2);
  EXPECT_NEAR(b.network[0].pressure({1.0, 0.5, 0.0}), expected, 1e-12);
  EXPECT_FALSE(b.has_velocity_region(0));
  EXPECT_FALSE(b.has_velocity_region(1));

  const auto c = constant_pressure_solution(2, 3.5, p);
  const BoundarySpec bc = boundary_data(c, m);
  EXPECT_DOUBLE_EQ(bc.network[0].pressure({0.0, 0.3, 0.0}), 3.5);
  EXPECT_DOUBLE_EQ(bc.network[1].pressure({1.0, 0.9, 0.0}), 3.5);

  const auto s3 = exact_solution_3d(p);
  Mesh m3 = generate_unit_mesh(3, CellKind::Hex, 1);
  const BoundarySpec b3 = boundary_data(s3, m3);
  EXPECT_DOUBLE_EQ(b3.network[1].pressure({1, 1, 1}), s3({1, 1, 1}).p2);
  EXPECT_THROW(boundary_data(s3, m), std::invalid_argument);
}

TEST(Boundary, VelocityRegionAssignment) {
  const auto p = DppParameters::benchmark_2d();
  const auto s = exact_solution_2d(p);
  Mesh m = generate_unit_mesh(2, CellKind::Tri, 3);
  BoundarySpec b = boundary_data(s, m);
  assign_velocity_region(b, s, m, [](const Vec3& c) { return c[1] < 1e-12; });
  EXPECT_TRUE(b.has_velocity_region(0));
  int n = 0;
  for (int f = 0; f < m.n_facets(); ++f)
    if (m.facet(f).is_boundary() && b.network[0].facet_kind[f] == BoundaryKind::Velocity) ++n;
  EXPECT_EQ(n, 3);
  b.network[1].normal_velocity = nullptr;
  EXPECT_THROW(b.validate(m), std::invalid_argument);
}

TEST(Parameters, FileParsing) {
  std::istringstream in("# sample\nmu = 2\nbeta=0.5\n k1 = 3 \nk2=0.25\neta_u = 4\neta_p=7\n");
  const DppParameters p = load_parameters(in);
  EXPECT_DOUBLE_EQ(p.mu, 2.0);
  EXPECT_DOUBLE_EQ(p.beta, 0.5);
  EXPECT_DOUBLE_EQ(p.k1, 3.0);
  EXPECT_DOUBLE_EQ(p.k2, 0.25);
  EXPECT_DOUBLE_EQ(p.eta_u, 4.0);
  EXPECT_DOUBLE_EQ(p.eta_p, 7.0);

  std::istringstream unknown("mu = 1\nkappa = 3\n");
  EXPECT_THROW(load_parameters(unknown), std::invalid_argument);
  std::istringstream bad("mu = abc\n");
  EXPECT_THROW(load_parameters(bad), std::invalid_argument);
  std::istringstream neg("k1 = -1\n");
  EXPECT_THROW(load_parameters(neg), std::invalid_argument);
  EXPECT_THROW(resolve_parameters("/nonexistent/params.cfg"), std::invalid_argument);
}

TEST(Parameters, NamedSets) {
  for (const auto& name : {"benchmark-2d", "benchmark-3d"}) {
    const DppParameters p = resolve_parameters(name);
    EXPECT_DOUBLE_EQ(p.mu, 1.0);
    EXPECT_DOUBLE_EQ(p.beta, 1.0);
    EXPECT_DOUBLE_EQ(p.k1, 1.0);
    EXPECT_DOUBLE_EQ(p.k2, 0.1);
    EXPECT_DOUBLE_EQ(p.eta_u, 10.0);
    EXPECT_DOUBLE_EQ(p.eta_p, 10.0);
    EXPECT_DOUBLE_EQ(norm(p.gamma_b), 0.0);
  }
}
