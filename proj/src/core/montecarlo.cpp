#include "core/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "core/errors.hpp"

namespace dirac {

namespace {

constexpr double kRejectionAbortRate = 0.01;

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.total_time > 0.0)) {
    throw std::invalid_argument("run_experiment: total_time must be positive");
  }
  if (cfg.steps < 1) {
    throw std::invalid_argument("run_experiment: steps must be >= 1");
  }
  if (cfg.samples < 1) {
    throw std::invalid_argument("run_experiment: samples must be >= 1");
  }
  if (cfg.quad_steps < 1) {
    throw std::invalid_argument("run_experiment: quad_steps must be >= 1");
  }
  // noise parameters are checked here so nothing can throw inside a worker
  if (cfg.noise_kind == NoiseKind::wiener) {
    if (cfg.wiener.bx < 0.0 || cfg.wiener.by < 0.0 || cfg.wiener.bz < 0.0) {
      throw std::invalid_argument("run_experiment: diffusion constants must be nonnegative");
    }
  } else {
    if (!(cfg.ou.gamma > 0.0)) {
      throw std::invalid_argument("run_experiment: gamma must be positive");
    }
    if (cfg.ou.diffusion < 0.0) {
      throw std::invalid_argument("run_experiment: diffusion must be nonnegative");
    }
  }
}

int resolve_workers(int workers) {
  if (workers <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    workers = hc == 0 ? 1 : static_cast<int>(hc);
  }
  return std::clamp(workers, 1, 256);
}

}  // namespace

PhaseEnsemble run_experiment(const ExperimentConfig& cfg, int workers) {
  validate(cfg);
  const TimeGrid grid = make_time_grid(cfg.total_time, cfg.steps);
  const std::uint64_t m = cfg.samples;
  const int nworkers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_workers(workers)), m));

  std::vector<double> angle(m, 0.0);
  std::vector<std::uint8_t> accepted(m, 0);

  const PhaseConvention conv{cfg.coupling};
  auto chunk = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<Vec3> noise;
    Trajectory traj;
    traj.grid = grid;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const RngStream stream{cfg.master_seed, i};
      if (cfg.noise_kind == NoiseKind::wiener) {
        sample_wiener_into(grid, cfg.wiener, stream, noise);
      } else {
        sample_ou_into(grid, cfg.ou, stream, cfg.ou_init, noise);
      }
      compose_into(cfg.drift, grid, noise, traj.points);
      try {
        const PhaseSample s = gauge_invariant_phase(cfg.field, traj, conv, cfg.quad_steps);
        // near-string evaluations that slip past the exclusion radius can
        // still blow up numerically; count those as rejections too
        if (std::isfinite(s.phase_angle)) {
          angle[i] = s.phase_angle;
          accepted[i] = 1;
        } else {
          accepted[i] = 0;
        }
      } catch (const singular_region_error&) {
        accepted[i] = 0;
      }
    }
  };

  if (nworkers == 1) {
    chunk(0, m);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    const std::uint64_t per = m / static_cast<std::uint64_t>(nworkers);
    const std::uint64_t extra = m % static_cast<std::uint64_t>(nworkers);
    std::uint64_t lo = 0;
    for (int w = 0; w < nworkers; ++w) {
      const std::uint64_t hi = lo + per + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
      pool.emplace_back(chunk, lo, hi);
      lo = hi;
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  PhaseEnsemble ens;
  ens.config = cfg;
  ens.phases.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (accepted[i]) {
      ens.phases.emplace_back(i, angle[i]);
    } else {
      ++ens.rejected;
    }
  }

  const double rate = static_cast<double>(ens.rejected) / static_cast<double>(m);
  if (rate > kRejectionAbortRate) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "run_experiment: rejection rate %.4f exceeds the %.2f%% abort threshold", rate,
                  kRejectionAbortRate * 100.0);
    throw run_aborted_error(msg, rate);
  }
  return ens;
}

MomentEstimate estimate_moments(std::span<const double> phases, std::uint32_t resamples,
                                std::uint64_t resample_seed) {
  const std::size_t n = phases.size();
  if (n < 2) {
    throw std::invalid_argument("estimate_moments: need at least two accepted samples");
  }
  MomentEstimate est;
  est.accepted = n;

  double sum = 0.0;
  for (double v : phases) {
    sum += v;
  }
  est.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : phases) {
    const double d = v - est.mean;
    ss += d * d;
  }
  est.variance = ss / static_cast<double>(n - 1);
  est.sigma = std::sqrt(est.variance);

  if (resamples < 2) {
    return est;
  }

  // bootstrap the mean, variance, and sigma in one pass per resample;
  // accumulation is centered on the full-sample mean for stability
  std::vector<double> bmean(resamples), bvar(resamples), bsig(resamples);
  for (std::uint32_t b = 0; b < resamples; ++b) {
    NormalStream draw(resample_seed, b);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double v = phases[draw.next_u64() % n] - est.mean;
      s1 += v;
      s2 += v * v;
    }
    const double mb = s1 / static_cast<double>(n);
    const double vb = std::max(0.0, (s2 - static_cast<double>(n) * mb * mb) /
                                        static_cast<double>(n - 1));
    bmean[b] = est.mean + mb;
    bvar[b] = vb;
    bsig[b] = std::sqrt(vb);
  }
  auto spread = [&](const std::vector<double>& xs) {
    double m0 = 0.0;
    for (double v : xs) {
      m0 += v;
    }
    m0 /= static_cast<double>(xs.size());
    double acc = 0.0;
    for (double v : xs) {
      const double d = v - m0;
      acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
  };
  est.stderr_mean = spread(bmean);
  est.stderr_variance = spread(bvar);
  est.stderr_sigma = spread(bsig);
  return est;
}

MomentEstimate estimate_moments(const PhaseEnsemble& ensemble, std::uint32_t resamples,
                                std::uint64_t resample_seed) {
  std::vector<double> phases;
  phases.reserve(ensemble.phases.size());
  for (const auto& [idx, phi] : ensemble.phases) {
    (void)idx;
    phases.push_back(phi);
  }
  return estimate_moments(phases, resamples, resample_seed);
}

MomentEstimate estimate_moments(const PhaseEnsemble& ensemble) {
  return estimate_moments(ensemble, ensemble.config.bootstrap_resamples,
                          mix_seed(ensemble.config.master_seed, 0xB005u));
}

std::vector<SweepPoint> sweep_variance(const ExperimentConfig& base_config,
                                       std::span<const double> n_values, int workers) {
  if (n_values.empty()) {
    throw std::invalid_argument("sweep_variance: no N values given");
  }
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    if (!(n_values[k] > 0.0)) {
      throw std::invalid_argument("sweep_variance: N values must be positive");
    }
    if (k > 0 && n_values[k] <= n_values[k - 1]) {
      throw std::invalid_argument("sweep_variance: N values must be strictly increasing");
    }
  }

  std::vector<SweepPoint> points;
  points.reserve(n_values.size());
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    ExperimentConfig cfg = base_config;
    cfg.total_time = base_config.noise_kind == NoiseKind::ou
                         ? n_values[k] / base_config.ou.gamma
                         : n_values[k];
    cfg.master_seed = mix_seed(base_config.master_seed, k);
    PhaseEnsemble ens = run_experiment(cfg, workers);
    const MomentEstimate est = estimate_moments(ens);
    points.push_back(SweepPoint{n_values[k], est.sigma, est.stderr_sigma});
  }
  return points;
}

FitResult fit_sqrt_law(std::span<const SweepPoint> points) {
  const std::size_t n = points.size();
  if (n < 3) {
    throw std::invalid_argument("fit_sqrt_law: need at least three sweep points");
  }
  // normal equations for sigma = a * sqrt(N) + b
  double sxx = 0.0, sx = 0.0, sxy = 0.0, sy = 0.0;
  for (const SweepPoint& p : points) {
    const double x = std::sqrt(p.n);
    sxx += x * x;
    sx += x;
    sxy += x * p.sigma;
    sy += p.sigma;
  }
  const double nn = static_cast<double>(n);
  const double det = nn * sxx - sx * sx;
  if (!(std::abs(det) > 1e-12 * std::max(1.0, nn * sxx))) {
    throw std::invalid_argument("fit_sqrt_law: degenerate design (all N equal)");
  }
  FitResult fit;
  fit.a = (nn * sxy - sx * sy) / det;
  fit.b = (sxx * sy - sx * sxy) / det;

  double rss = 0.0;
  for (const SweepPoint& p : points) {
    const double r = p.sigma - (fit.a * std::sqrt(p.n) + fit.b);
    rss += r * r;
  }
  fit.residual_norm = std::sqrt(rss);
  if (n > 2) {
    const double s2 = rss / static_cast<double>(n - 2);
    fit.stderr_a = std::sqrt(s2 * nn / det);
    fit.stderr_b = std::sqrt(s2 * sxx / det);
  }
  return fit;
}

}  // namespace dirac
