#pragma once

#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include "core/rng.hpp"
#include "core/vec3.hpp"

namespace dirac {

/// Uniform grid of `steps` panels on [0, total_time]; steps + 1 node times
/// t_j = j * dt.
struct TimeGrid {
  double total_time = 0.0;
  std::int64_t steps = 0;
  double dt = 0.0;

  std::int64_t nodes() const { return steps + 1; }
  double node_time(std::int64_t j) const { return static_cast<double>(j) * dt; }
};

TimeGrid make_time_grid(double total_time, std::int64_t steps);

/// Per-axis diffusion constants of the Wiener noise. A zero entry freezes
/// that axis at the origin.
struct WienerParams {
  double bx = 0.0, by = 0.0, bz = 0.0;
};

/// Isotropic Ornstein-Uhlenbeck noise: relaxation rate gamma > 0, diffusion
/// constant `diffusion` >= 0, stationary variance epsilon^2 = D / (2 gamma).
struct OuParams {
  double gamma = 1.0;
  double diffusion = 0.0;

  double epsilon2() const { return diffusion / (2.0 * gamma); }
  double epsilon() const { return std::sqrt(epsilon2()); }
  static OuParams from_epsilon(double gamma, double epsilon);
};

enum class OuInit { stationary, fixed_origin };

struct TrivialDrift {
  Vec3 point;
};

/// Precession about the z axis at colatitude theta0, closing after
/// `turns` full revolutions over the operational time.
struct PrecessionDrift {
  double theta0 = 0.0;
  double phi0 = 0.0;
  std::int64_t turns = 1;
};

using DriftLoop = std::variant<TrivialDrift, PrecessionDrift>;

struct Trajectory {
  TimeGrid grid;
  std::vector<Vec3> points;  // grid.nodes() entries
};
using NoisePath = Trajectory;

/// Identifies a reproducible variate stream: the k-th draw is a pure function
/// of (master_seed, stream_index, k). One stream per trajectory.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Brownian noise path started at the origin: independent centered Gaussian
/// increments with per-axis variance B * dt.
NoisePath sample_wiener_path(const TimeGrid& grid, const WienerParams& params, RngStream stream);

/// Ornstein-Uhlenbeck noise path using the exact conditional-Gaussian update
///   x(t + dt) = x(t) e^{-gamma dt} + eps sqrt(1 - e^{-2 gamma dt}) xi.
/// Stationary init draws x(0) from N(0, eps^2); fixed_origin starts at zero.
NoisePath sample_ou_path(const TimeGrid& grid, const OuParams& params, RngStream stream,
                         OuInit init = OuInit::stationary);

Vec3 drift_position(const DriftLoop& loop, double t, double total_time);

/// Pointwise sum of drift and noise on the noise path's grid.
Trajectory compose_trajectory(const DriftLoop& loop, const NoisePath& noise);

// Allocation-free variants used by the ensemble runner.
void sample_wiener_into(const TimeGrid& grid, const WienerParams& params, RngStream stream,
                        std::vector<Vec3>& out);
void sample_ou_into(const TimeGrid& grid, const OuParams& params, RngStream stream, OuInit init,
                    std::vector<Vec3>& out);
void compose_into(const DriftLoop& loop, const TimeGrid& grid, const std::vector<Vec3>& noise,
                  std::vector<Vec3>& out);

}  // namespace dirac
