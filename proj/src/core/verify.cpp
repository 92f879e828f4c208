#include "core/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>
#include <vector>

#include "core/csv.hpp"
#include "core/montecarlo.hpp"
#include "core/theory.hpp"

namespace dirac {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

class Reporter {
 public:
  Reporter(const std::function<void(const std::string&)>& sink) : sink_(sink) {}

  void criterion(int id, bool passed, const std::string& name, const std::string& detail) {
    sink_(fmt("[%2d] %s  %-28s %s", id, passed ? "PASS" : "FAIL", name.c_str(), detail.c_str()));
    if (!passed) {
      ++failures_;
    }
  }

  void note(const std::string& text) { sink_("     note: " + text); }

  int failures() const { return failures_; }

 private:
  const std::function<void(const std::string&)>& sink_;
  int failures_ = 0;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// base point used by every monopole criterion: cos(theta0) = 1/sqrt(3)
const double kTheta0 = std::acos(1.0 / std::sqrt(3.0));
const Vec3 kBase{std::sqrt(2.0 / 3.0), 0.0, 1.0 / std::sqrt(3.0)};

ExperimentConfig uniform_wiener_config(double total_time, std::uint64_t samples,
                                       std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.field = UniformAsymmetric{1.0};
  cfg.noise_kind = NoiseKind::wiener;
  cfg.wiener = WienerParams{1.0, 1.0, 0.0};
  cfg.drift = TrivialDrift{Vec3{1.0, 0.0, 0.0}};
  cfg.total_time = total_time;
  cfg.steps = 1000;
  cfg.samples = samples;
  cfg.master_seed = seed;
  return cfg;
}

// Unit circle in the z = 0 plane with a smoothly non-uniform node parameter.
// Uniform sampling is too symmetric: the O(1/steps) terms of both gauges
// cancel identically there, which would leave nothing to measure.
Trajectory circle_trajectory(std::int64_t steps, bool skewed) {
  Trajectory traj;
  traj.grid = make_time_grid(1.0, steps);
  traj.points.resize(static_cast<std::size_t>(steps + 1));
  for (std::int64_t j = 0; j <= steps; ++j) {
    const double s = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(steps);
    const double theta =
        skewed ? s + 0.3 * std::sin(s) + 0.2 * (std::cos(2.0 * s) - 1.0) : s;
    traj.points[static_cast<std::size_t>(j)] = Vec3{std::cos(theta), std::sin(theta), 0.0};
  }
  traj.points.back() = traj.points.front();
  return traj;
}

}  // namespace

int run_acceptance_suite(const VerifyOptions& options,
                         const std::function<void(const std::string&)>& sink) {
  Reporter report(sink);
  const bool quick = options.quick;
  const int workers = options.workers;
  sink(quick ? "acceptance suite (quick mode: reduced samples, no wall-clock checks)"
             : "acceptance suite (full mode)");

  // ---- criteria 1 and 2: Wiener/uniform variance and mean ------------------
  {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t m = quick ? 10000 : 100000;
    bool var_ok = true, mean_ok = true;
    std::string var_detail, mean_detail;
    const double times[] = {0.5, 1.0, 2.0};
    for (std::size_t k = 0; k < 3; ++k) {
      ExperimentConfig cfg = uniform_wiener_config(times[k], m, mix_seed(9001, k));
      const MomentEstimate est = estimate_moments(run_experiment(cfg, workers));
      const double target = wiener_uniform_moments(1.0, 1.0, times[k]).variance;
      var_ok = var_ok && std::abs(est.variance - target) <= 3.0 * est.stderr_variance;
      mean_ok = mean_ok && std::abs(est.mean) <= 3.0 * est.stderr_mean;
      var_detail += fmt("T=%.1f var=%.5f target=%.5f 3se=%.5f  ", times[k], est.variance, target,
                        3.0 * est.stderr_variance);
      mean_detail += fmt("T=%.1f mean=% .5f 3se=%.5f  ", times[k], est.mean,
                         3.0 * est.stderr_mean);
    }
    const double elapsed = seconds_since(start);
    if (!quick && elapsed >= 60.0) {
      var_ok = false;
    }
    report.criterion(1, var_ok, "wiener-uniform-variance",
                     var_detail + fmt("(%.1f s)", elapsed));
    report.criterion(2, mean_ok, "wiener-uniform-mean", mean_detail);
  }

  // ---- criterion 3: OU/uniform scaling in T ---------------------------------
  {
    const double gamma = 50.0, eps = 0.1;
    const std::uint64_t m = quick ? 20000 : 100000;
    MomentEstimate est[2];
    const double times[] = {1.0, 2.0};
    for (std::size_t k = 0; k < 2; ++k) {
      ExperimentConfig cfg;
      cfg.field = UniformAsymmetric{1.0};
      cfg.noise_kind = NoiseKind::ou;
      cfg.ou = OuParams::from_epsilon(gamma, eps);
      cfg.drift = TrivialDrift{Vec3{1.0, 0.0, 0.0}};
      cfg.total_time = times[k];
      cfg.steps = quick ? 2500 : 5000;
      cfg.samples = m;
      cfg.master_seed = mix_seed(9003, k);
      est[k] = estimate_moments(run_experiment(cfg, workers));
    }
    const double ratio = est[1].variance / est[0].variance;
    const bool ok = std::abs(ratio - 2.0) <= 0.2;
    report.criterion(3, ok, "ou-uniform-scaling",
                     fmt("var(T=2)/var(T=1)=%.3f target=2.0+-0.2", ratio));
    // fit sigma^2 = alpha eps^4 (gamma T + beta) through the two points and
    // report alongside the quoted closed form (alpha=2, beta=1), whose
    // leading coefficient is an open point.
    const double e4 = eps * eps * eps * eps;
    const double alpha = (est[1].variance - est[0].variance) / (e4 * gamma * (times[1] - times[0]));
    const double beta = est[0].variance / (alpha * e4) - gamma * times[0];
    report.note(fmt("fitted alpha=%.3f beta=%.2f; quoted closed form has alpha=2 beta=1 "
                    "(quoted variance at T=1: %.3e, measured: %.3e)",
                    alpha, beta, ou_uniform_variance(eps, gamma, 1.0).variance,
                    est[0].variance));
  }

  // ---- criterion 4: monopole/Wiener moments against the linearized field ----
  {
    const auto start = std::chrono::steady_clock::now();
    const LinearCoefficients coeffs = linearize_monopole(kBase);
    ExperimentConfig cfg;
    cfg.field = LinearizedMonopole{kBase, coeffs};
    cfg.noise_kind = NoiseKind::wiener;
    cfg.wiener = WienerParams{1.0, 1.0, 1.0};
    cfg.drift = TrivialDrift{kBase};
    cfg.total_time = 1.0;
    cfg.steps = quick ? 500 : 1000;
    cfg.samples = quick ? 20000 : 100000;
    cfg.master_seed = mix_seed(9004, 0);
    const MomentEstimate est = estimate_moments(run_experiment(cfg, workers));
    const AnalyticMoments pred = monopole_wiener_moments(coeffs, 1.0, 1.0, 1.0, 1.0);
    const double elapsed = seconds_since(start);

    const bool mean_ok = std::abs(est.mean - pred.mean) <= 3.0 * est.stderr_mean;
    bool var_ok = std::abs(est.variance - pred.variance) <= 3.0 * est.stderr_variance;
    if (!quick && elapsed >= 120.0) {
      var_ok = false;
    }
    report.criterion(4, mean_ok && var_ok, "monopole-wiener-moments",
                     fmt("mean=% .5f target=% .5f 3se=%.5f | var=%.5f target=%.5f 3se=%.5f "
                         "(%.1f s)",
                         est.mean, pred.mean, 3.0 * est.stderr_mean, est.variance, pred.variance,
                         3.0 * est.stderr_variance, elapsed));
    if (!var_ok) {
      report.note(fmt("the closed-form variance target (1/4) B T^2 = %.4f is not reproduced by "
                      "simulation; the sampled value %.4f +- %.4f instead matches the "
                      "independently derived quadratic form (1/4)[(fy+gx)^2 BxBy + fz^2 BxBz + "
                      "gz^2 ByBz] T^2 = %.4f",
                      pred.variance, est.variance, est.stderr_variance,
                      0.25 * ((coeffs.fy + coeffs.gx) * (coeffs.fy + coeffs.gx) +
                              coeffs.fz * coeffs.fz + coeffs.gz * coeffs.gz)));
    }
  }

  // ---- criteria 5 and 6: OU sweep on the full monopole ----------------------
  {
    const double n_values[] = {5.0, 10.0, 20.0, 50.0, 100.0, 200.0};
    ExperimentConfig base;
    base.field = Monopole{};
    base.noise_kind = NoiseKind::ou;
    base.ou = OuParams::from_epsilon(50.0, 0.05);
    base.drift = TrivialDrift{kBase};
    base.total_time = 1.0;  // overwritten per sweep point
    base.steps = quick ? 2500 : 5000;
    base.samples = quick ? 4000 : 20000;
    base.master_seed = mix_seed(9005, 0);

    {
      const auto start = std::chrono::steady_clock::now();
      const auto points = sweep_variance(base, n_values, workers);
      const FitResult fit = fit_sqrt_law(points);
      const double elapsed = seconds_since(start);
      bool ok = std::abs(fit.a - 0.0025) <= 0.2 * 0.0025;
      if (!quick && elapsed >= 600.0) {
        ok = false;
      }
      report.criterion(5, ok, "sqrt-law-fit-trivial-drift",
                       fmt("a=%.5f target=0.00250+-20%% b=% .5f residual=%.2e (%.1f s)", fit.a,
                           fit.b, fit.residual_norm, elapsed));
      std::string pts;
      for (const SweepPoint& p : points) {
        pts += fmt("N=%g sigma=%.5f  ", p.n, p.sigma);
      }
      report.note(pts);
    }

    {
      ExperimentConfig prec = base;
      prec.drift = PrecessionDrift{kTheta0, 0.0, 1};
      prec.master_seed = mix_seed(9006, 0);
      const auto points = sweep_variance(prec, n_values, workers);
      std::size_t argmin = 0;
      for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k].sigma < points[argmin].sigma) {
          argmin = k;
        }
      }
      // transient signature: sigma at small N exceeds its minimum over the
      // sweep, i.e. the curve first falls (trivial drift rises from the start)
      const double drop = points.front().sigma - points[argmin].sigma;
      const double drop_se = std::sqrt(points.front().sigma_stderr * points.front().sigma_stderr +
                                       points[argmin].sigma_stderr * points[argmin].sigma_stderr);
      const bool transient = argmin >= 1 && drop > 3.0 * drop_se;
      std::string shape;
      for (const SweepPoint& p : points) {
        shape += fmt("%.5f ", p.sigma);
      }
      report.criterion(6, transient, "precession-transient",
                       fmt("sigma over N in {5..200}: %s(min at N=%g, initial drop %.1f se)",
                           shape.c_str(), points[argmin].n, drop / drop_se));
    }
  }

  // ---- criterion 7: gauge invariance on a deterministic loop ----------------
  {
    const PhaseConvention conv;
    double diff[2];
    const std::int64_t grids[] = {1000, 10000};
    for (int k = 0; k < 2; ++k) {
      const Trajectory traj = circle_trajectory(grids[k], /*skewed=*/true);
      const double asym =
          gauge_invariant_phase(FieldModel{UniformAsymmetric{1.0}}, traj, conv).phase_angle;
      const double sym =
          gauge_invariant_phase(FieldModel{UniformSymmetric{1.0}}, traj, conv).phase_angle;
      diff[k] = std::abs(asym - sym);
    }
    const double exponent = std::log10(diff[0] / diff[1]);
    const bool ok = diff[0] <= 1e-2 && exponent >= 0.8 && exponent <= 1.2;
    report.criterion(7, ok, "gauge-invariance-scaling",
                     fmt("|diff|=%.2e at 1e3 nodes, %.2e at 1e4; exponent=%.2f in [0.8, 1.2]",
                         diff[0], diff[1], exponent));
  }

  // ---- criterion 8: deterministic geometry oracles ---------------------------
  {
    const PhaseConvention conv;
    const Trajectory circle = circle_trajectory(10000, /*skewed=*/false);
    const double circle_phase =
        gauge_invariant_phase(FieldModel{UniformAsymmetric{1.0}}, circle, conv).phase_angle;
    const bool circle_ok = std::abs(circle_phase - (-kPi)) <= 1e-2;

    const TimeGrid grid = make_time_grid(1.0, 10000);
    NoisePath still;
    still.grid = grid;
    still.points.assign(static_cast<std::size_t>(grid.nodes()), Vec3{});
    const Trajectory loop =
        compose_trajectory(DriftLoop{PrecessionDrift{kTheta0, 0.0, 1}}, still);
    const double loop_phase =
        gauge_invariant_phase(FieldModel{Monopole{}}, loop, conv).phase_angle;
    const double target = noiseless_precession_phase(kTheta0);
    const bool loop_ok = std::abs(std::abs(loop_phase) - target) <= 1e-3;

    report.criterion(8, circle_ok && loop_ok, "geometry-oracles",
                     fmt("unit circle phase=%.5f (target -pi, tol 1e-2); |precession loop "
                         "phase|=%.6f target=%.6f (tol 1e-3)",
                         circle_phase, std::abs(loop_phase), target));
  }

  // ---- criterion 9: monopole curl against r / R^3 ----------------------------
  {
    // low-discrepancy points in a shell that stays clear of the string
    const double a1 = 0.8191725133961645, a2 = 0.6710436067037893, a3 = 0.5497004779019703;
    double worst = 0.0;
    const FieldModel mono{Monopole{}};
    for (int k = 1; k <= 100; ++k) {
      const double u1 = std::fmod(a1 * k, 1.0);
      const double u2 = std::fmod(a2 * k, 1.0);
      const double u3 = std::fmod(a3 * k, 1.0);
      const double radius = 0.8 + 0.8 * u1;
      const double cos_t = -0.55 + 1.5 * u2;
      const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
      const double phi = 2.0 * kPi * u3;
      const Vec3 p{radius * sin_t * std::cos(phi), radius * sin_t * std::sin(phi),
                   radius * cos_t};
      const Vec3 estimate = curl_check(mono, p, 1e-4);
      const Vec3 exact = (1.0 / (radius * radius * radius)) * p;
      worst = std::max(worst, norm(estimate - exact));
    }
    report.criterion(9, worst < 1e-3, "monopole-curl-field",
                     fmt("max |curl A - r/R^3| = %.2e over 100 points (tol 1e-3, h=1e-4)",
                         worst));
  }

  // ---- criterion 10: byte-identical output across worker counts --------------
  {
    ExperimentConfig cfg = uniform_wiener_config(1.0, 10000, 777);
    cfg.steps = 200;
    auto render = [&](int nworkers) {
      const PhaseEnsemble ens = run_experiment(cfg, nworkers);
      const MomentEstimate est = estimate_moments(ens);
      std::ostringstream out;
      write_ensemble_csv(out, ens);
      write_summary_csv(out, est, ens.rejected);
      return out.str();
    };
    const std::string one = render(1);
    const std::string eight = render(8);
    report.criterion(10, one == eight, "worker-count-determinism",
                     fmt("ensemble+summary CSV bytes %s across workers {1, 8}",
                         one == eight ? "identical" : "DIFFER"));
  }

  sink(fmt("%d of 10 criteria passed", 10 - report.failures()));
  return report.failures();
}

}  // namespace dirac
