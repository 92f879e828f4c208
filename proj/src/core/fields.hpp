#pragma once

#include <variant>

#include "core/vec3.hpp"

namespace dirac {

/// A = (-y B, 0, 0); curl (0, 0, B).
struct UniformAsymmetric {
  double field_strength = 1.0;
};

/// A = (-y B/2, x B/2, 0); same curl as the asymmetric gauge.
struct UniformSymmetric {
  double field_strength = 1.0;
};

/// Unit magnetic monopole at the origin,
///   A . dr = (1 - z/R) / (x^2 + y^2) (-y dx + x dy),
/// undefined on the Dirac string z/R = -1. Points with x^2 + y^2 below
/// string_exclusion_radius^2 are rejected.
struct Monopole {
  double string_exclusion_radius = 1e-6;
};

/// Taylor coefficients of the monopole potential at a base point:
///   A_L . dr = -[f0 + f.(r - base)] dx + [g0 + g.(r - base)] dy.
struct LinearCoefficients {
  double f0 = 0.0, fx = 0.0, fy = 0.0, fz = 0.0;
  double g0 = 0.0, gx = 0.0, gy = 0.0, gz = 0.0;
};

struct LinearizedMonopole {
  Vec3 base;
  LinearCoefficients coeffs;
};

using FieldModel =
    std::variant<UniformAsymmetric, UniformSymmetric, Monopole, LinearizedMonopole>;

/// Vector potential at r. Throws singular_region_error near the monopole
/// string (node index unset; trajectory walkers fill it in).
Vec3 evaluate_potential(const FieldModel& field, const Vec3& r);

/// First-order expansion of the monopole potential about `base`:
/// f-coefficients are value and gradient of c(r) y, g-coefficients of c(r) x,
/// with c(r) = (1 - z/R) / (x^2 + y^2).
LinearCoefficients linearize_monopole(const Vec3& base, double rho_min = 1e-6);

/// Central-difference curl of A at r with stencil width h.
Vec3 curl_check(const FieldModel& field, const Vec3& r, double h);

// Concrete-type evaluations; used to keep hot loops monomorphic.
inline Vec3 potential_of(const UniformAsymmetric& f, const Vec3& r) {
  return Vec3{-r.y * f.field_strength, 0.0, 0.0};
}
inline Vec3 potential_of(const UniformSymmetric& f, const Vec3& r) {
  return Vec3{-0.5 * r.y * f.field_strength, 0.5 * r.x * f.field_strength, 0.0};
}
Vec3 potential_of(const Monopole& f, const Vec3& r);
inline Vec3 potential_of(const LinearizedMonopole& f, const Vec3& r) {
  const Vec3 d = r - f.base;
  const LinearCoefficients& c = f.coeffs;
  return Vec3{-(c.f0 + c.fx * d.x + c.fy * d.y + c.fz * d.z),
              c.g0 + c.gx * d.x + c.gy * d.y + c.gz * d.z, 0.0};
}

}  // namespace dirac
