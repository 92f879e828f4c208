#pragma once

#include <cstdint>

#include "core/fields.hpp"
#include "core/paths.hpp"

namespace dirac {

// Sign convention, fixed here and nowhere else:
//
//   phase_angle = -coupling * (open_path_integral + closure_integral)
//
// where both integrals are line integrals of the vector potential A itself
// (open path: left-endpoint Ito sum over trajectory nodes; closure: along the
// straight chord from r(T) back to r(0)). `coupling` stands for q/hbar with
// the field strength folded in. With the defaults (coupling = 1, uniform
// asymmetric gauge at unit strength) the assembled angle reduces to
//   phase = int y dx + (1/2) [x(0) - x(T)] [y(0) + y(T)],
// and a counterclockwise unit circle gives -pi. All second-moment results are
// independent of the overall sign.
struct PhaseConvention {
  double coupling = 1.0;
};

struct PhaseSample {
  double open_path_integral = 0.0;  // Ito sum of A . dr along the trajectory
  double closure_integral = 0.0;    // integral of A . dr along the chord r(T) -> r(0)
  double phase_angle = 0.0;
  // endpoint bookkeeping: delta_a = a(0) - a(T), sigma = y(0) + y(T)
  double delta_x = 0.0, delta_y = 0.0, delta_z = 0.0;
  double delta = 0.0, sigma = 0.0;
};

/// Left-endpoint (Ito) Riemann sum of A . dr over the trajectory nodes.
/// Singular evaluations propagate with the offending node index attached.
double ito_line_integral(const FieldModel& field, const Trajectory& traj);

/// Line integral of A along the straight chord from r_end to r_start.
/// Affine potentials use the exact midpoint form (uniform asymmetric gauge:
/// -B * Delta * Sigma / 2); the full monopole uses midpoint quadrature with
/// quad_steps panels, checking each panel node against the excluded region.
double geodesic_closure(const FieldModel& field, const Vec3& r_end, const Vec3& r_start,
                        std::int64_t quad_steps);

/// Closed form of the linearized-monopole closure contribution to the phase
/// angle, valid when the trajectory starts at the linearization base:
///   [f0 - (f . Delta)/2] Delta_x - [g0 - (g . Delta)/2] Delta_y,
/// with Delta_a = a(0) - a(T). Equals -geodesic_closure on the corresponding
/// LinearizedMonopole field based at r_start.
double closure_linearized(const LinearCoefficients& coeffs, const Vec3& r_start,
                          const Vec3& r_end);

/// Open-path integral plus geodesic closure, assembled into the gauge
/// invariant phase angle under the convention above.
PhaseSample gauge_invariant_phase(const FieldModel& field, const Trajectory& traj,
                                  const PhaseConvention& conv, std::int64_t quad_steps = 64);

}  // namespace dirac
