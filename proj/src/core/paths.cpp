#include "core/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dirac {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TimeGrid make_time_grid(double total_time, std::int64_t steps) {
  if (!(total_time > 0.0)) {
    throw std::invalid_argument("make_time_grid: total_time must be positive");
  }
  if (steps < 1) {
    throw std::invalid_argument("make_time_grid: steps must be >= 1");
  }
  return TimeGrid{total_time, steps, total_time / static_cast<double>(steps)};
}

OuParams OuParams::from_epsilon(double gamma, double epsilon) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("OuParams: gamma must be positive");
  }
  if (epsilon < 0.0) {
    throw std::invalid_argument("OuParams: epsilon must be nonnegative");
  }
  return OuParams{gamma, 2.0 * gamma * epsilon * epsilon};
}

void sample_wiener_into(const TimeGrid& grid, const WienerParams& params, RngStream stream,
                        std::vector<Vec3>& out) {
  if (params.bx < 0.0 || params.by < 0.0 || params.bz < 0.0) {
    throw std::invalid_argument("sample_wiener_path: diffusion constants must be nonnegative");
  }
  const double sx = std::sqrt(params.bx * grid.dt);
  const double sy = std::sqrt(params.by * grid.dt);
  const double sz = std::sqrt(params.bz * grid.dt);

  NormalStream rng(stream.master_seed, stream.stream_index);
  out.resize(static_cast<std::size_t>(grid.nodes()));
  Vec3 p{};  // noise component vanishes at t = 0
  out[0] = p;
  for (std::int64_t j = 1; j <= grid.steps; ++j) {
    p.x += sx * rng.next();
    p.y += sy * rng.next();
    p.z += sz * rng.next();
    out[static_cast<std::size_t>(j)] = p;
  }
}

void sample_ou_into(const TimeGrid& grid, const OuParams& params, RngStream stream, OuInit init,
                    std::vector<Vec3>& out) {
  if (!(params.gamma > 0.0)) {
    throw std::invalid_argument("sample_ou_path: gamma must be positive");
  }
  if (params.diffusion < 0.0) {
    throw std::invalid_argument("sample_ou_path: diffusion must be nonnegative");
  }
  const double eps = params.epsilon();
  const double decay = std::exp(-params.gamma * grid.dt);
  const double kick = eps * std::sqrt(1.0 - decay * decay);

  NormalStream rng(stream.master_seed, stream.stream_index);
  out.resize(static_cast<std::size_t>(grid.nodes()));
  Vec3 p{};
  if (init == OuInit::stationary) {
    p = Vec3{eps * rng.next(), eps * rng.next(), eps * rng.next()};
  }
  out[0] = p;
  for (std::int64_t j = 1; j <= grid.steps; ++j) {
    p.x = p.x * decay + kick * rng.next();
    p.y = p.y * decay + kick * rng.next();
    p.z = p.z * decay + kick * rng.next();
    out[static_cast<std::size_t>(j)] = p;
  }
}

NoisePath sample_wiener_path(const TimeGrid& grid, const WienerParams& params, RngStream stream) {
  NoisePath path;
  path.grid = grid;
  sample_wiener_into(grid, params, stream, path.points);
  return path;
}

NoisePath sample_ou_path(const TimeGrid& grid, const OuParams& params, RngStream stream,
                         OuInit init) {
  NoisePath path;
  path.grid = grid;
  sample_ou_into(grid, params, stream, init, path.points);
  return path;
}

Vec3 drift_position(const DriftLoop& loop, double t, double total_time) {
  if (t < 0.0 || t > total_time) {
    throw std::invalid_argument("drift_position: t outside [0, total_time]");
  }
  if (const auto* trivial = std::get_if<TrivialDrift>(&loop)) {
    return trivial->point;
  }
  const auto& prec = std::get<PrecessionDrift>(loop);
  const double st = std::sin(prec.theta0);
  const double angle =
      prec.phi0 + kTwoPi * static_cast<double>(prec.turns) * (t / total_time);
  return Vec3{st * std::cos(angle), st * std::sin(angle), std::cos(prec.theta0)};
}

void compose_into(const DriftLoop& loop, const TimeGrid& grid, const std::vector<Vec3>& noise,
                  std::vector<Vec3>& out) {
  if (noise.size() != static_cast<std::size_t>(grid.nodes())) {
    throw std::invalid_argument("compose_trajectory: noise path does not match the grid");
  }
  out.resize(noise.size());
  if (const auto* trivial = std::get_if<TrivialDrift>(&loop)) {
    const Vec3 p = trivial->point;
    for (std::size_t j = 0; j < noise.size(); ++j) {
      out[j] = p + noise[j];
    }
    return;
  }
  for (std::size_t j = 0; j < noise.size(); ++j) {
    // node_time(steps) may land one ulp past total_time
    const double t = std::min(grid.node_time(static_cast<std::int64_t>(j)), grid.total_time);
    out[j] = drift_position(loop, t, grid.total_time) + noise[j];
  }
}

Trajectory compose_trajectory(const DriftLoop& loop, const NoisePath& noise) {
  Trajectory traj;
  traj.grid = noise.grid;
  compose_into(loop, noise.grid, noise.points, traj.points);
  return traj;
}

}  // namespace dirac
