#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "core/fields.hpp"
#include "core/paths.hpp"
#include "core/phase.hpp"

namespace dirac {

enum class NoiseKind { wiener, ou };

/// Everything needed to reproduce one ensemble. Trajectory i derives its
/// variates from stream (master_seed, i), so results do not depend on worker
/// count or execution order.
struct ExperimentConfig {
  FieldModel field = UniformAsymmetric{1.0};
  NoiseKind noise_kind = NoiseKind::wiener;
  WienerParams wiener;
  OuParams ou;
  OuInit ou_init = OuInit::stationary;
  DriftLoop drift = TrivialDrift{};
  double total_time = 1.0;
  std::int64_t steps = 1;
  std::uint64_t samples = 1;
  std::uint64_t master_seed = 0;
  double coupling = 1.0;
  std::int64_t quad_steps = 64;
  std::uint32_t bootstrap_resamples = 200;
};

struct PhaseEnsemble {
  ExperimentConfig config;
  std::vector<std::pair<std::uint64_t, double>> phases;  // (trajectory index, angle), ordered
  std::uint64_t rejected = 0;
};

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double stderr_mean = 0.0;
  double stderr_variance = 0.0;
  double sigma = 0.0;  // sqrt(variance)
  double stderr_sigma = 0.0;
  std::uint64_t accepted = 0;
};

struct SweepPoint {
  double n = 0.0;  // gamma * T for OU noise, T itself for Wiener noise
  double sigma = 0.0;
  double sigma_stderr = 0.0;
};

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double residual_norm = 0.0;
  double stderr_a = 0.0;
  double stderr_b = 0.0;
};

/// Samples `config.samples` noisy trajectories and computes their phases.
/// String-crossing samples are counted as rejections and excluded; if the
/// rejection rate exceeds 1% the run aborts with run_aborted_error.
/// workers = 0 picks the hardware concurrency; the result is bit-identical
/// for every worker count.
PhaseEnsemble run_experiment(const ExperimentConfig& config, int workers = 0);

/// Unbiased mean/variance plus bootstrap standard errors (deterministic in
/// resample_seed). Requires at least two accepted samples.
MomentEstimate estimate_moments(std::span<const double> phases, std::uint32_t resamples,
                                std::uint64_t resample_seed);
MomentEstimate estimate_moments(const PhaseEnsemble& ensemble, std::uint32_t resamples,
                                std::uint64_t resample_seed);
/// Convenience form using the ensemble's configured resample count and a
/// resample seed derived from its master seed.
MomentEstimate estimate_moments(const PhaseEnsemble& ensemble);

/// One moment estimate per requested N. For OU noise T = N / gamma (gamma
/// fixed, so the noise amplitude stays constant across the sweep); for Wiener
/// noise N is the operational time itself. Each point runs with a seed
/// derived from (master_seed, point index).
std::vector<SweepPoint> sweep_variance(const ExperimentConfig& base_config,
                                       std::span<const double> n_values, int workers = 0);

/// Ordinary least squares of sigma against (sqrt(N), 1).
FitResult fit_sqrt_law(std::span<const SweepPoint> points);

}  // namespace dirac
