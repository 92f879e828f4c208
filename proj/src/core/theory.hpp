#pragma once

#include "core/fields.hpp"

namespace dirac {

/// Closed-form prediction for the phase distribution's first two moments.
/// `asymptotic_ok` is cleared when the formula is quoted outside its regime
/// of validity (currently only the OU result, which assumes e^{-gamma T}
/// negligible).
struct AnalyticMoments {
  double mean = 0.0;
  double variance = 0.0;
  bool asymptotic_ok = true;
};

/// Uniform field, planar Wiener noise on a trivial drift loop:
/// mean 0, variance (1/4) bx by T^2.
AnalyticMoments wiener_uniform_moments(double bx, double by, double total_time);

/// Uniform field, stationary OU noise: mean 0, variance quoted as
/// 2 eps^4 (gamma T + 1). Valid asymptotically in e^{-gamma T} -> 0; the
/// leading coefficient is an open point (see the acceptance suite, which fits
/// alpha and beta in alpha eps^4 (gamma T + beta) from simulation and reports
/// them next to this value).
AnalyticMoments ou_uniform_variance(double epsilon, double gamma, double total_time);

/// Linearized monopole, 3D Wiener noise on a trivial drift loop at the
/// expansion base: mean (1/2)(gy by - fx bx) T, variance (1/4) B T^2 with
///   B = bx (3 bx fx^2 + 2 by fy^2 + 2 bz fz^2)
///     + by (2 bx gx^2 + 3 by gy^2 + 2 bz gz^2).
AnalyticMoments monopole_wiener_moments(const LinearCoefficients& coeffs, double bx, double by,
                                        double bz, double total_time);

/// Loop integral of the monopole potential around the colatitude-theta0
/// circle: 2 pi (1 - cos theta0), the solid angle of the enclosed cap.
double noiseless_precession_phase(double theta0);

}  // namespace dirac
