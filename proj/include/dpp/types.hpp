#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dpp {

/// Spatial point or vector. Unused trailing components are zero in 2D.
using Vec3 = std::array<double, 3>;

enum class CellKind { Tri, Quad, Tet, Hex };

enum class Formulation { Hdiv, CgVms, DgVms };

/// Global field numbering: macro velocity (0), macro pressure (1),
/// micro velocity (2), micro pressure (3).
enum class Field : int { U1 = 0, P1 = 1, U2 = 2, P2 = 3 };

inline constexpr int kNumFields = 4;

inline constexpr bool is_velocity(Field f) { return f == Field::U1 || f == Field::U2; }
inline constexpr int network_of(Field f) { return (f == Field::U1 || f == Field::P1) ? 0 : 1; }
inline constexpr Field velocity_field(int network) { return network == 0 ? Field::U1 : Field::U2; }
inline constexpr Field pressure_field(int network) { return network == 0 ? Field::P1 : Field::P2; }

inline constexpr int cell_dim(CellKind k) { return (k == CellKind::Tri || k == CellKind::Quad) ? 2 : 3; }
inline constexpr bool is_simplex(CellKind k) { return k == CellKind::Tri || k == CellKind::Tet; }

inline constexpr int vertices_per_cell(CellKind k) {
  switch (k) {
    case CellKind::Tri: return 3;
    case CellKind::Quad: return 4;
    case CellKind::Tet: return 4;
    case CellKind::Hex: return 8;
  }
  return 0;
}

inline constexpr int facets_per_cell(CellKind k) {
  switch (k) {
    case CellKind::Tri: return 3;
    case CellKind::Quad: return 4;
    case CellKind::Tet: return 4;
    case CellKind::Hex: return 6;
  }
  return 0;
}

std::string to_string(CellKind k);
std::string to_string(Formulation f);
std::string to_string(Field f);
CellKind parse_cell_kind(std::string_view s);
Formulation parse_formulation(std::string_view s);

// Small vector helpers.
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace dpp
