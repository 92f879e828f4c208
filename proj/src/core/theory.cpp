#include "core/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace dirac {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
}

AnalyticMoments wiener_uniform_moments(double bx, double by, double total_time) {
  if (bx < 0.0 || by < 0.0) {
    throw std::invalid_argument("wiener_uniform_moments: diffusion constants must be nonnegative");
  }
  if (!(total_time > 0.0)) {
    throw std::invalid_argument("wiener_uniform_moments: total_time must be positive");
  }
  return AnalyticMoments{0.0, 0.25 * bx * by * total_time * total_time, true};
}

AnalyticMoments ou_uniform_variance(double epsilon, double gamma, double total_time) {
  if (epsilon < 0.0) {
    throw std::invalid_argument("ou_uniform_variance: epsilon must be nonnegative");
  }
  if (!(gamma > 0.0) || !(total_time > 0.0)) {
    throw std::invalid_argument("ou_uniform_variance: gamma and total_time must be positive");
  }
  const double e2 = epsilon * epsilon;
  AnalyticMoments m;
  m.mean = 0.0;
  m.variance = 2.0 * e2 * e2 * (gamma * total_time + 1.0);
  m.asymptotic_ok = std::exp(-gamma * total_time) <= 1e-3;
  return m;
}

AnalyticMoments monopole_wiener_moments(const LinearCoefficients& c, double bx, double by,
                                        double bz, double total_time) {
  if (bx < 0.0 || by < 0.0 || bz < 0.0) {
    throw std::invalid_argument(
        "monopole_wiener_moments: diffusion constants must be nonnegative");
  }
  if (!(total_time > 0.0)) {
    throw std::invalid_argument("monopole_wiener_moments: total_time must be positive");
  }
  const double curly_b = bx * (3.0 * bx * c.fx * c.fx + 2.0 * by * c.fy * c.fy +
                               2.0 * bz * c.fz * c.fz) +
                         by * (2.0 * bx * c.gx * c.gx + 3.0 * by * c.gy * c.gy +
                               2.0 * bz * c.gz * c.gz);
  AnalyticMoments m;
  m.mean = 0.5 * (c.gy * by - c.fx * bx) * total_time;
  m.variance = 0.25 * curly_b * total_time * total_time;
  return m;
}

double noiseless_precession_phase(double theta0) {
  if (!(theta0 > 0.0) || !(theta0 < kPi)) {
    throw std::invalid_argument("noiseless_precession_phase: theta0 must lie in (0, pi)");
  }
  return 2.0 * kPi * (1.0 - std::cos(theta0));
}

}  // namespace dirac
