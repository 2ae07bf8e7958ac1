#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpp/mesh.hpp"
#include "dpp/types.hpp"

namespace dpp {

/// Physical constants of the double porosity/permeability model.
struct DppParameters {
  double mu = 1.0;
  Vec3 gamma_b{};  // specific body force, gamma * b
  double beta = 1.0;
  double k1 = 1.0;
  double k2 = 0.1;
  double eta_u = 10.0;
  double eta_p = 10.0;
  double L = 1.0;

  void validate() const;

  double permeability(int network) const { return network == 0 ? k1 : k2; }

  static DppParameters benchmark_2d();
  static DppParameters benchmark_3d();
};

/// Flat key/value parameter file: `key = value` per line, `#` comments.
/// Recognised keys: mu, beta, k1, k2, eta_u, eta_p, L. Unknown keys throw.
DppParameters load_parameters(std::istream& in, DppParameters base = {});
DppParameters load_parameters_file(const std::string& path, DppParameters base = {});

/// Named set ("benchmark-2d", "benchmark-3d") or a path to a parameter file.
DppParameters resolve_parameters(const std::string& name_or_path);

/// sqrt(beta (k1 + k2) / (k1 k2)).
double eta(const DppParameters& params);

struct ExactFields {
  Vec3 u1{};
  double p1 = 0.0;
  Vec3 u2{};
  double p2 = 0.0;
};

/// Closed-form first derivatives used by the residual checks.
struct ExactDerivatives {
  Vec3 grad_p1{};
  Vec3 grad_p2{};
  double div_u1 = 0.0;
  double div_u2 = 0.0;
};

/// Pointwise residuals of the four governing equations.
struct PdeResidual {
  double darcy1 = 0.0;     // |mu/k1 u1 + grad p1 - gamma b|
  double darcy2 = 0.0;     // |mu/k2 u2 + grad p2 - gamma b|
  double mass1 = 0.0;      // div u1 + beta/mu (p1 - p2)
  double mass2 = 0.0;      // div u2 - beta/mu (p1 - p2)

  double max_abs() const;
};

class ManufacturedSolution {
 public:
  using FieldFn = std::function<ExactFields(const Vec3&)>;
  using DerivFn = std::function<ExactDerivatives(const Vec3&)>;

  ManufacturedSolution(int dim, std::string name, DppParameters params, FieldFn fields, DerivFn derivs)
      : dim_(dim), name_(std::move(name)), params_(params), fields_(std::move(fields)), derivs_(std::move(derivs)) {}

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const DppParameters& params() const { return params_; }

  ExactFields operator()(const Vec3& x) const { return fields_(x); }
  ExactDerivatives derivatives(const Vec3& x) const { return derivs_(x); }
  PdeResidual residual(const Vec3& x) const;

 private:
  int dim_;
  std::string name_;
  DppParameters params_;
  FieldFn fields_;
  DerivFn derivs_;
};

/// Two-dimensional benchmark solution (exponential/trigonometric fields).
ManufacturedSolution exact_solution_2d(const DppParameters& params);

/// Micro pressure exponential term divided by k2 (`Symmetric`, satisfies the
/// micro Darcy law) or by k1 (`K1Exponent`, does not). Benchmarks use
/// `Symmetric`.
enum class Micro3dVariant { K1Exponent, Symmetric };
ManufacturedSolution exact_solution_3d(const DppParameters& params, Micro3dVariant variant = Micro3dVariant::Symmetric);

/// u1 = u2 = 0, p1 = p2 = c. Exactly representable by every discretization.
ManufacturedSolution constant_pressure_solution(int dim, double c, const DppParameters& params);

/// Benchmark solution for the mesh dimension.
ManufacturedSolution benchmark_solution(int dim, const DppParameters& params);

enum class BoundaryKind : unsigned char { Pressure, Velocity };

/// Boundary partition and data for one pore network.
struct NetworkBoundary {
  std::vector<BoundaryKind> facet_kind;  // indexed by global facet; interior entries unused
  std::function<double(const Vec3&)> pressure;                     // p0 on the pressure region
  std::function<double(const Vec3&, const Vec3&)> normal_velocity;  // u_n(x, n) on the velocity region
};

struct BoundarySpec {
  std::array<NetworkBoundary, 2> network;

  /// Checks that each boundary facet is assigned to exactly one region and
  /// that the data needed by each region is present.
  void validate(const Mesh& mesh) const;
  bool has_velocity_region(int net) const;
};

/// Pressure prescribed on the whole boundary for both networks, with the
/// traces of the exact pressures as data.
BoundarySpec boundary_data(const ManufacturedSolution& mms, const Mesh& mesh);

/// Moves the boundary facets selected by `on_velocity_region` (evaluated at
/// facet centroids) to the velocity region with exact u.n data.
void assign_velocity_region(BoundarySpec& spec, const ManufacturedSolution& mms, const Mesh& mesh,
                            const std::function<bool(const Vec3& centroid)>& on_velocity_region);

}  // namespace dpp
