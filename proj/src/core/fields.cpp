#include "core/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"

namespace dirac {

Vec3 potential_of(const Monopole& f, const Vec3& r) {
  const double rho2 = r.x * r.x + r.y * r.y;
  const double rho_min = f.string_exclusion_radius;
  if (rho2 < rho_min * rho_min) {
    throw singular_region_error("monopole potential evaluated within the string exclusion radius");
  }
  const double radius = norm(r);
  const double c = (1.0 - r.z / radius) / rho2;
  return Vec3{-c * r.y, c * r.x, 0.0};
}

Vec3 evaluate_potential(const FieldModel& field, const Vec3& r) {
  return std::visit([&](const auto& f) { return potential_of(f, r); }, field);
}

LinearCoefficients linearize_monopole(const Vec3& base, double rho_min) {
  const double rho2 = base.x * base.x + base.y * base.y;
  if (rho2 < rho_min * rho_min) {
    throw singular_region_error("linearize_monopole: base point too close to the polar axis");
  }
  const double radius = norm(base);
  const double r3 = radius * radius * radius;
  const double c = (1.0 - base.z / radius) / rho2;

  // gradient of c(r) = (1 - z/R) / rho^2
  const double dcdx = (base.z * base.x / r3) / rho2 - 2.0 * base.x * (1.0 - base.z / radius) / (rho2 * rho2);
  const double dcdy = (base.z * base.y / r3) / rho2 - 2.0 * base.y * (1.0 - base.z / radius) / (rho2 * rho2);
  const double dcdz = (base.z * base.z / r3 - 1.0 / radius) / rho2;

  LinearCoefficients out;
  out.f0 = c * base.y;
  out.fx = base.y * dcdx;
  out.fy = c + base.y * dcdy;
  out.fz = base.y * dcdz;
  out.g0 = c * base.x;
  out.gx = c + base.x * dcdx;
  out.gy = base.x * dcdy;
  out.gz = base.x * dcdz;
  return out;
}

Vec3 curl_check(const FieldModel& field, const Vec3& r, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("curl_check: h must be positive");
  }
  const auto at = [&](double dx, double dy, double dz) {
    return evaluate_potential(field, Vec3{r.x + dx, r.y + dy, r.z + dz});
  };
  const Vec3 axp = at(h, 0, 0), axm = at(-h, 0, 0);
  const Vec3 ayp = at(0, h, 0), aym = at(0, -h, 0);
  const Vec3 azp = at(0, 0, h), azm = at(0, 0, -h);
  const double inv = 1.0 / (2.0 * h);
  return Vec3{(ayp.z - aym.z) * inv - (azp.y - azm.y) * inv,
              (azp.x - azm.x) * inv - (axp.z - axm.z) * inv,
              (axp.y - axm.y) * inv - (ayp.x - aym.x) * inv};
}

}  // namespace dirac
