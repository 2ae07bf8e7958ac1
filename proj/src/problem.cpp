#include "dpp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace dpp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void DppParameters::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(k1 > 0.0) || !(k2 > 0.0)) throw std::invalid_argument("permeabilities must be positive");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be non-negative");
  if (!(eta_u >= 0.0) || !(eta_p >= 0.0)) throw std::invalid_argument("penalty numbers must be non-negative");
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
}

DppParameters DppParameters::benchmark_2d() { return DppParameters{}; }

DppParameters DppParameters::benchmark_3d() { return DppParameters{}; }

DppParameters load_parameters(std::istream& in, DppParameters p) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad number '" + val + "'");
    }
    if (key == "mu") p.mu = v;
    else if (key == "beta") p.beta = v;
    else if (key == "k1") p.k1 = v;
    else if (key == "k2") p.k2 = v;
    else if (key == "eta_u") p.eta_u = v;
    else if (key == "eta_p") p.eta_p = v;
    else if (key == "L") p.L = v;
    else throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown parameter '" + key + "'");
  }
  p.validate();
  return p;
}

DppParameters load_parameters_file(const std::string& path, DppParameters base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open parameter file '" + path + "'");
  return load_parameters(in, base);
}

DppParameters resolve_parameters(const std::string& name_or_path) {
  if (name_or_path == "benchmark-2d") return DppParameters::benchmark_2d();
  if (name_or_path == "benchmark-3d") return DppParameters::benchmark_3d();
  return load_parameters_file(name_or_path);
}

double eta(const DppParameters& p) {
  if (p.beta < 0.0) throw std::invalid_argument("beta must be non-negative");
  if (!(p.k1 > 0.0) || !(p.k2 > 0.0)) throw std::invalid_argument("permeabilities must be positive");
  return std::sqrt(p.beta * (p.k1 + p.k2) / (p.k1 * p.k2));
}

double PdeResidual::max_abs() const {
  return std::max({std::abs(darcy1), std::abs(darcy2), std::abs(mass1), std::abs(mass2)});
}

PdeResidual ManufacturedSolution::residual(const Vec3& x) const {
  const ExactFields f = fields_(x);
  const ExactDerivatives d = derivs_(x);
  const DppParameters& p = params_;
  PdeResidual r;
  r.darcy1 = norm((p.mu / p.k1) * f.u1 + d.grad_p1 - p.gamma_b);
  r.darcy2 = norm((p.mu / p.k2) * f.u2 + d.grad_p2 - p.gamma_b);
  r.mass1 = d.div_u1 + p.beta / p.mu * (f.p1 - f.p2);
  r.mass2 = d.div_u2 - p.beta / p.mu * (f.p1 - f.p2);
  return r;
}

ManufacturedSolution exact_solution_2d(const DppParameters& params) {
  params.validate();
  const double pi = std::numbers::pi;
  const DppParameters p = params;
  const double e = eta(p);
  auto fields = [p, e, pi](const Vec3& x) {
    const double ex = std::exp(pi * x[0]);
    const double s = std::sin(pi * x[1]), c = std::cos(pi * x[1]);
    const double ey = std::exp(e * x[1]);
    ExactFields f;
    f.u1 = {-p.k1 * ex * s, -p.k1 * (ex * c - e / (p.beta * p.k1) * ey), 0.0};
    f.p1 = p.mu / pi * ex * s - p.mu / (p.beta * p.k1) * ey;
    f.u2 = {-p.k2 * ex * s, -p.k2 * (ex * c + e / (p.beta * p.k2) * ey), 0.0};
    f.p2 = p.mu / pi * ex * s + p.mu / (p.beta * p.k2) * ey;
    return f;
  };
  auto derivs = [p, e, pi](const Vec3& x) {
    const double ex = std::exp(pi * x[0]);
    const double s = std::sin(pi * x[1]), c = std::cos(pi * x[1]);
    const double ey = std::exp(e * x[1]);
    ExactDerivatives d;
    d.grad_p1 = {p.mu * ex * s, p.mu * ex * c - p.mu * e / (p.beta * p.k1) * ey, 0.0};
    d.grad_p2 = {p.mu * ex * s, p.mu * ex * c + p.mu * e / (p.beta * p.k2) * ey, 0.0};
    // d/dx(-k ex s) + d/dy(-k (ex c -+ e/(beta k) ey))
    d.div_u1 = -p.k1 * pi * ex * s - p.k1 * (-pi * ex * s - e * e / (p.beta * p.k1) * ey);
    d.div_u2 = -p.k2 * pi * ex * s - p.k2 * (-pi * ex * s + e * e / (p.beta * p.k2) * ey);
    return d;
  };
  return ManufacturedSolution(2, "benchmark-2d", params, fields, derivs);
}

ManufacturedSolution exact_solution_3d(const DppParameters& params, Micro3dVariant variant) {
  params.validate();
  const double pi = std::numbers::pi;
  const DppParameters p = params;
  const double e = eta(p);
  const double k_micro = variant == Micro3dVariant::K1Exponent ? p.k1 : p.k2;
  auto fields = [p, e, pi, k_micro](const Vec3& x) {
    const double ex = std::exp(pi * x[0]);
    const double sy = std::sin(pi * x[1]), cy = std::cos(pi * x[1]);
    const double sz = std::sin(pi * x[2]), cz = std::cos(pi * x[2]);
    const double ey = std::exp(e * x[1]), ez = std::exp(e * x[2]);
    ExactFields f;
    f.u1 = {-p.k1 * ex * (sy + sz), -p.k1 * (ex * cy - e / (p.beta * p.k1) * ey),
            -p.k1 * (ex * cz - e / (p.beta * p.k1) * ez)};
    f.p1 = p.mu / pi * ex * (sy + sz) - p.mu / (p.beta * p.k1) * (ey + ez);
    f.u2 = {-p.k2 * ex * (sy + sz), -p.k2 * (ex * cy + e / (p.beta * p.k2) * ey),
            -p.k2 * (ex * cz + e / (p.beta * p.k2) * ez)};
    f.p2 = p.mu / pi * ex * (sy + sz) + p.mu / (p.beta * k_micro) * (ey + ez);
    return f;
  };
  auto derivs = [p, e, pi, k_micro](const Vec3& x) {
    const double ex = std::exp(pi * x[0]);
    const double sy = std::sin(pi * x[1]), cy = std::cos(pi * x[1]);
    const double sz = std::sin(pi * x[2]), cz = std::cos(pi * x[2]);
    const double ey = std::exp(e * x[1]), ez = std::exp(e * x[2]);
    ExactDerivatives d;
    d.grad_p1 = {p.mu * ex * (sy + sz), p.mu * ex * cy - p.mu * e / (p.beta * p.k1) * ey,
                 p.mu * ex * cz - p.mu * e / (p.beta * p.k1) * ez};
    d.grad_p2 = {p.mu * ex * (sy + sz), p.mu * ex * cy + p.mu * e / (p.beta * k_micro) * ey,
                 p.mu * ex * cz + p.mu * e / (p.beta * k_micro) * ez};
    d.div_u1 = -p.k1 * pi * ex * (sy + sz) + p.k1 * pi * ex * sy + p.k1 * pi * ex * sz +
               e * e / p.beta * (ey + ez);
    d.div_u2 = -p.k2 * pi * ex * (sy + sz) + p.k2 * pi * ex * sy + p.k2 * pi * ex * sz -
               e * e / p.beta * (ey + ez);
    return d;
  };
  const std::string name = variant == Micro3dVariant::K1Exponent ? "benchmark-3d-k1" : "benchmark-3d";
  return ManufacturedSolution(3, name, params, fields, derivs);
}

ManufacturedSolution constant_pressure_solution(int dim, double c, const DppParameters& params) {
  params.validate();
  auto fields = [c](const Vec3&) {
    ExactFields f;
    f.p1 = c;
    f.p2 = c;
    return f;
  };
  auto derivs = [](const Vec3&) { return ExactDerivatives{}; };
  return ManufacturedSolution(dim, "constant-pressure", params, fields, derivs);
}

ManufacturedSolution benchmark_solution(int dim, const DppParameters& params) {
  return dim == 2 ? exact_solution_2d(params) : exact_solution_3d(params);
}

bool BoundarySpec::has_velocity_region(int net) const {
  const auto& k = network[net].facet_kind;
  return std::find(k.begin(), k.end(), BoundaryKind::Velocity) != k.end();
}

void BoundarySpec::validate(const Mesh& mesh) const {
  for (int net = 0; net < 2; ++net) {
    const auto& nb = network[net];
    if (static_cast<int>(nb.facet_kind.size()) != mesh.n_facets())
      throw std::invalid_argument("boundary spec does not match the mesh facet count");
    bool any_p = false, any_u = false;
    for (int f = 0; f < mesh.n_facets(); ++f) {
      if (!mesh.facet(f).is_boundary()) continue;
      (nb.facet_kind[f] == BoundaryKind::Pressure ? any_p : any_u) = true;
    }
    if (any_p && !nb.pressure) throw std::invalid_argument("pressure region without pressure data");
    if (any_u && !nb.normal_velocity) throw std::invalid_argument("velocity region without normal velocity data");
  }
}

BoundarySpec boundary_data(const ManufacturedSolution& mms, const Mesh& mesh) {
  if (mms.dim() != mesh.dim()) throw std::invalid_argument("solution dimension does not match the mesh");
  BoundarySpec spec;
  for (int net = 0; net < 2; ++net) {
    auto& nb = spec.network[net];
    nb.facet_kind.assign(mesh.n_facets(), BoundaryKind::Pressure);
    nb.pressure = [mms, net](const Vec3& x) {
      const ExactFields f = mms(x);
      return net == 0 ? f.p1 : f.p2;
    };
    nb.normal_velocity = [mms, net](const Vec3& x, const Vec3& n) {
      const ExactFields f = mms(x);
      return dot(net == 0 ? f.u1 : f.u2, n);
    };
  }
  return spec;
}

void assign_velocity_region(BoundarySpec& spec, const ManufacturedSolution& mms, const Mesh& mesh,
                            const std::function<bool(const Vec3&)>& on_velocity_region) {
  for (int net = 0; net < 2; ++net) {
    auto& nb = spec.network[net];
    for (int f = 0; f < mesh.n_facets(); ++f) {
      const auto& rec = mesh.facet(f);
      if (rec.is_boundary() && on_velocity_region(rec.centroid)) nb.facet_kind[f] = BoundaryKind::Velocity;
    }
    nb.normal_velocity = [mms, net](const Vec3& x, const Vec3& n) {
      const ExactFields f = mms(x);
      return dot(net == 0 ? f.u1 : f.u2, n);
    };
  }
}

}  // namespace dpp
