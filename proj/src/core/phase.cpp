#include "core/phase.hpp"

#include <stdexcept>

#include "core/errors.hpp"

namespace dirac {

namespace {

template <typename Field>
double ito_sum(const Field& f, const std::vector<Vec3>& pts) {
  double acc = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    Vec3 a;
    try {
      a = potential_of(f, pts[j]);
    } catch (singular_region_error& e) {
      e.node_index = static_cast<std::int64_t>(j);
      throw;
    }
    acc += dot(a, pts[j + 1] - pts[j]);
  }
  return acc;
}

}  // namespace

double ito_line_integral(const FieldModel& field, const Trajectory& traj) {
  if (traj.points.size() < 2) {
    throw std::invalid_argument("ito_line_integral: trajectory needs at least two nodes");
  }
  return std::visit([&](const auto& f) { return ito_sum(f, traj.points); }, field);
}

double geodesic_closure(const FieldModel& field, const Vec3& r_end, const Vec3& r_start,
                        std::int64_t quad_steps) {
  if (quad_steps < 1) {
    throw std::invalid_argument("geodesic_closure: quad_steps must be >= 1");
  }
  const Vec3 chord = r_start - r_end;

  if (const auto* asym = std::get_if<UniformAsymmetric>(&field)) {
    const double delta = r_start.x - r_end.x;
    const double sigma = r_start.y + r_end.y;
    return -asym->field_strength * delta * sigma / 2.0;
  }
  // The remaining affine potentials are integrated exactly by one midpoint
  // evaluation; the monopole needs real quadrature.
  if (!std::holds_alternative<Monopole>(field)) {
    const Vec3 mid = 0.5 * (r_start + r_end);
    return dot(evaluate_potential(field, mid), chord);
  }

  const auto& mono = std::get<Monopole>(field);
  double acc = 0.0;
  const double w = 1.0 / static_cast<double>(quad_steps);
  for (std::int64_t k = 0; k < quad_steps; ++k) {
    const double s = (static_cast<double>(k) + 0.5) * w;
    const Vec3 p = r_end + s * chord;
    Vec3 a;
    try {
      a = potential_of(mono, p);
    } catch (singular_region_error& e) {
      e.node_index = -1;  // chord node, not a trajectory node
      throw;
    }
    acc += dot(a, chord) * w;
  }
  return acc;
}

double closure_linearized(const LinearCoefficients& c, const Vec3& r_start, const Vec3& r_end) {
  const double dx = r_start.x - r_end.x;
  const double dy = r_start.y - r_end.y;
  const double dz = r_start.z - r_end.z;
  const double fdot = c.fx * dx + c.fy * dy + c.fz * dz;
  const double gdot = c.gx * dx + c.gy * dy + c.gz * dz;
  return (c.f0 - 0.5 * fdot) * dx - (c.g0 - 0.5 * gdot) * dy;
}

PhaseSample gauge_invariant_phase(const FieldModel& field, const Trajectory& traj,
                                  const PhaseConvention& conv, std::int64_t quad_steps) {
  PhaseSample s;
  s.open_path_integral = ito_line_integral(field, traj);
  const Vec3 r0 = traj.points.front();
  const Vec3 rT = traj.points.back();
  s.closure_integral = geodesic_closure(field, rT, r0, quad_steps);
  s.delta_x = r0.x - rT.x;
  s.delta_y = r0.y - rT.y;
  s.delta_z = r0.z - rT.z;
  s.delta = s.delta_x;
  s.sigma = r0.y + rT.y;
  s.phase_angle = -conv.coupling * (s.open_path_integral + s.closure_integral);
  return s;
}

}  // namespace dirac
