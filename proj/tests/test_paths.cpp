#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "core/paths.hpp"

using namespace dirac;

namespace {

// variance across paths of a per-path scalar
struct Stats {
  double mean = 0.0, var = 0.0;
  std::size_t n = 0;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  s.n = xs.size();
  for (double v : xs) {
    s.mean += v;
  }
  s.mean /= static_cast<double>(s.n);
  for (double v : xs) {
    s.var += (v - s.mean) * (v - s.mean);
  }
  s.var /= static_cast<double>(s.n - 1);
  return s;
}

// standard error of a sample variance estimate when the draws are Gaussian
double var_stderr(double variance, std::size_t n) {
  return variance * std::sqrt(2.0 / static_cast<double>(n - 1));
}

}  // namespace

TEST_CASE("time grid arithmetic") {
  const TimeGrid g = make_time_grid(1.0, 4);
  CHECK(g.dt == doctest::Approx(0.25));
  CHECK(g.nodes() == 5);
  CHECK(g.node_time(0) == 0.0);
  CHECK(g.node_time(1) == 0.25);
  CHECK(g.node_time(2) == 0.5);
  CHECK(g.node_time(3) == 0.75);
  CHECK(g.node_time(4) == 1.0);

  const TimeGrid single = make_time_grid(2.0, 1);
  CHECK(single.dt == 2.0);
  CHECK(single.nodes() == 2);

  CHECK_THROWS_AS(make_time_grid(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_time_grid(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_time_grid(-1.0, 4), std::invalid_argument);
}

TEST_CASE("wiener path with zero diffusion stays at the origin") {
  const TimeGrid g = make_time_grid(1.0, 32);
  const NoisePath p = sample_wiener_path(g, WienerParams{0, 0, 0}, RngStream{1, 0});
  REQUIRE(p.points.size() == 33);
  for (const Vec3& v : p.points) {
    CHECK(v.x == 0.0);
    CHECK(v.y == 0.0);
    CHECK(v.z == 0.0);
  }
}

TEST_CASE("wiener endpoint variance matches B T") {
  const TimeGrid g = make_time_grid(1.0, 16);
  const std::size_t m = 100000;
  std::vector<double> xt;
  xt.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const NoisePath p = sample_wiener_path(g, WienerParams{1.0, 0.5, 0.0}, RngStream{42, i});
    xt.push_back(p.points.back().x);
  }
  const Stats s = stats_of(xt);
  CHECK(std::abs(s.var - 1.0) <= 3.0 * var_stderr(1.0, m));
  CHECK(std::abs(s.mean) <= 3.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("wiener increments are uncorrelated at lag one") {
  const TimeGrid g = make_time_grid(1.0, 64);
  const std::size_t m = 20000;
  double sum = 0.0, sumsq = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const NoisePath p = sample_wiener_path(g, WienerParams{1.0, 0, 0}, RngStream{43, i});
    for (std::size_t j = 0; j + 2 < p.points.size(); ++j) {
      const double a = p.points[j + 1].x - p.points[j].x;
      const double b = p.points[j + 2].x - p.points[j + 1].x;
      sum += a * b;
      sumsq += a * a;
      ++pairs;
    }
  }
  const double corr = sum / sumsq;
  CHECK(std::abs(corr) <= 3.0 / std::sqrt(static_cast<double>(pairs)));
}

TEST_CASE("wiener endpoint distribution is invariant under grid refinement") {
  const std::size_t m = 100000;
  std::vector<double> coarse, fine;
  coarse.reserve(m);
  fine.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    coarse.push_back(sample_wiener_path(make_time_grid(1.0, 8), WienerParams{1, 0, 0},
                                        RngStream{44, i})
                         .points.back()
                         .x);
    fine.push_back(sample_wiener_path(make_time_grid(1.0, 16), WienerParams{1, 0, 0},
                                      RngStream{45, i})
                       .points.back()
                       .x);
  }
  const Stats a = stats_of(coarse);
  const Stats b = stats_of(fine);
  const double se = std::sqrt(var_stderr(1.0, m) * var_stderr(1.0, m) * 2.0);
  CHECK(std::abs(a.var - b.var) <= 3.0 * se);
  CHECK(std::abs(a.mean - b.mean) <= 3.0 * std::sqrt(2.0 / static_cast<double>(m)));
}

TEST_CASE("ou path with zero diffusion is identically zero") {
  const TimeGrid g = make_time_grid(1.0, 16);
  const NoisePath p = sample_ou_path(g, OuParams{2.0, 0.0}, RngStream{5, 0});
  for (const Vec3& v : p.points) {
    CHECK(v.x == 0.0);
    CHECK(v.y == 0.0);
    CHECK(v.z == 0.0);
  }
}

TEST_CASE("ou precondition checks") {
  const TimeGrid g = make_time_grid(1.0, 4);
  CHECK_THROWS_AS(sample_ou_path(g, OuParams{0.0, 1.0}, RngStream{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_ou_path(g, OuParams{-1.0, 1.0}, RngStream{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(OuParams::from_epsilon(0.0, 0.1), std::invalid_argument);
  CHECK(OuParams::from_epsilon(2.0, 0.1).epsilon2() == doctest::Approx(0.01));
}

TEST_CASE("stationary ou keeps variance epsilon^2 at every node") {
  const OuParams params = OuParams::from_epsilon(2.0, 0.3);
  const TimeGrid g = make_time_grid(1.0, 32);
  const std::size_t m = 100000;
  std::vector<std::vector<double>> x_by_node(g.nodes());
  for (auto& col : x_by_node) {
    col.reserve(m);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const NoisePath p = sample_ou_path(g, params, RngStream{46, i});
    for (std::size_t j = 0; j < p.points.size(); ++j) {
      x_by_node[j].push_back(p.points[j].x);
    }
  }
  const double eps2 = params.epsilon2();
  for (const auto& col : x_by_node) {
    const Stats s = stats_of(col);
    CHECK(std::abs(s.var - eps2) <= 3.0 * var_stderr(eps2, m));
  }
}

TEST_CASE("ou autocovariance decays as epsilon^2 e^{-gamma tau}") {
  const OuParams params = OuParams::from_epsilon(2.0, 0.3);
  const TimeGrid g = make_time_grid(2.0, 32);
  const std::size_t m = 100000;
  const std::size_t j0 = 8;
  const std::size_t lags[] = {1, 4, 16};
  double cov[3] = {0, 0, 0};
  for (std::size_t i = 0; i < m; ++i) {
    const NoisePath p = sample_ou_path(g, params, RngStream{47, i});
    for (int k = 0; k < 3; ++k) {
      cov[k] += p.points[j0].x * p.points[j0 + lags[k]].x;
    }
  }
  const double eps2 = params.epsilon2();
  for (int k = 0; k < 3; ++k) {
    cov[k] /= static_cast<double>(m);
    const double tau = static_cast<double>(lags[k]) * g.dt;
    const double expected = eps2 * std::exp(-params.gamma * tau);
    const double rho = std::exp(-params.gamma * tau);
    // Var of a sample covariance of jointly Gaussian pairs
    const double se = std::sqrt(eps2 * eps2 * (1.0 + rho * rho) / static_cast<double>(m));
    CHECK(std::abs(cov[k] - expected) <= 3.0 * se);
  }
}

TEST_CASE("ou exact update gives step-count independent endpoint statistics") {
  const OuParams params = OuParams::from_epsilon(3.0, 0.25);
  const std::size_t m = 100000;
  std::vector<double> coarse, fine;
  for (std::size_t i = 0; i < m; ++i) {
    coarse.push_back(
        sample_ou_path(make_time_grid(1.0, 16), params, RngStream{48, i}).points.back().x);
    fine.push_back(
        sample_ou_path(make_time_grid(1.0, 32), params, RngStream{49, i}).points.back().x);
  }
  const Stats a = stats_of(coarse);
  const Stats b = stats_of(fine);
  const double eps2 = params.epsilon2();
  const double se_var = std::sqrt(2.0) * var_stderr(eps2, m);
  const double se_mean = std::sqrt(2.0 * eps2 / static_cast<double>(m));
  CHECK(std::abs(a.var - b.var) <= 3.0 * se_var);
  CHECK(std::abs(a.mean - b.mean) <= 3.0 * se_mean);
}

TEST_CASE("axes are mutually independent") {
  const TimeGrid g = make_time_grid(1.0, 8);
  const std::size_t m = 100000;
  double acc_w = 0.0, acc_ou = 0.0;
  const OuParams ou = OuParams::from_epsilon(2.0, 0.5);
  for (std::size_t i = 0; i < m; ++i) {
    const NoisePath w = sample_wiener_path(g, WienerParams{1, 1, 1}, RngStream{50, i});
    acc_w += w.points.back().x * w.points.back().y;
    const NoisePath p = sample_ou_path(g, ou, RngStream{51, i});
    acc_ou += p.points[4].x * p.points.back().y;
  }
  // both products have unit-scale factors; se ~ scale / sqrt(m)
  CHECK(std::abs(acc_w / static_cast<double>(m)) <= 3.0 / std::sqrt(static_cast<double>(m)));
  CHECK(std::abs(acc_ou / static_cast<double>(m)) <=
        3.0 * ou.epsilon2() / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("drift positions") {
  const double theta0 = 0.7, phi0 = 0.3;
  const DriftLoop prec{PrecessionDrift{theta0, phi0, 1}};
  const Vec3 start = drift_position(prec, 0.0, 2.0);
  CHECK(start.x == doctest::Approx(std::sin(theta0) * std::cos(phi0)));
  CHECK(start.y == doctest::Approx(std::sin(theta0) * std::sin(phi0)));
  CHECK(start.z == doctest::Approx(std::cos(theta0)));

  const DriftLoop half{PrecessionDrift{theta0, 0.0, 1}};
  const Vec3 mid = drift_position(half, 1.0, 2.0);
  CHECK(mid.x == doctest::Approx(-std::sin(theta0)));
  CHECK(mid.y == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mid.z == doctest::Approx(std::cos(theta0)));

  // closed loop: r0(T) = r0(0)
  const Vec3 end = drift_position(prec, 2.0, 2.0);
  CHECK(end.x == doctest::Approx(start.x));
  CHECK(end.y == doctest::Approx(start.y));

  const DriftLoop trivial{TrivialDrift{Vec3{0.1, -0.2, 0.3}}};
  const Vec3 p = drift_position(trivial, 1.37, 2.0);
  CHECK(p.x == 0.1);
  CHECK(p.y == -0.2);
  CHECK(p.z == 0.3);

  CHECK_THROWS_AS(drift_position(prec, -0.1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(drift_position(prec, 2.1, 2.0), std::invalid_argument);
}

TEST_CASE("trajectory composition") {
  const TimeGrid g = make_time_grid(1.0, 8);
  NoisePath zero;
  zero.grid = g;
  zero.points.assign(9, Vec3{});

  const DriftLoop prec{PrecessionDrift{0.6, 0.0, 1}};
  const Trajectory drift_only = compose_trajectory(prec, zero);
  for (std::int64_t j = 0; j <= 8; ++j) {
    const Vec3 expected = drift_position(prec, g.node_time(j), 1.0);
    CHECK(drift_only.points[static_cast<std::size_t>(j)].x == doctest::Approx(expected.x));
    CHECK(drift_only.points[static_cast<std::size_t>(j)].z == doctest::Approx(expected.z));
  }

  const NoisePath noise = sample_wiener_path(g, WienerParams{1, 1, 1}, RngStream{7, 0});
  const Trajectory at_origin = compose_trajectory(DriftLoop{TrivialDrift{Vec3{}}}, noise);
  for (std::size_t j = 0; j < noise.points.size(); ++j) {
    CHECK(at_origin.points[j].x == noise.points[j].x);
  }

  const Vec3 p{1.0, 2.0, 3.0};
  const Trajectory shifted = compose_trajectory(DriftLoop{TrivialDrift{p}}, noise);
  for (std::size_t j = 0; j < noise.points.size(); ++j) {
    CHECK(shifted.points[j].x == p.x + noise.points[j].x);
    CHECK(shifted.points[j].y == p.y + noise.points[j].y);
    CHECK(shifted.points[j].z == p.z + noise.points[j].z);
  }

  NoisePath mismatched = noise;
  mismatched.points.pop_back();
  CHECK_THROWS_AS(compose_trajectory(DriftLoop{TrivialDrift{p}}, mismatched),
                  std::invalid_argument);
}

TEST_CASE("identical streams reproduce bit-identical paths") {
  const TimeGrid g = make_time_grid(1.0, 64);
  const NoisePath a = sample_wiener_path(g, WienerParams{1, 2, 3}, RngStream{123, 9});
  const NoisePath b = sample_wiener_path(g, WienerParams{1, 2, 3}, RngStream{123, 9});
  const NoisePath c = sample_wiener_path(g, WienerParams{1, 2, 3}, RngStream{123, 10});
  REQUIRE(a.points.size() == b.points.size());
  bool differs = false;
  for (std::size_t j = 0; j < a.points.size(); ++j) {
    CHECK(a.points[j].x == b.points[j].x);
    CHECK(a.points[j].y == b.points[j].y);
    CHECK(a.points[j].z == b.points[j].z);
    differs = differs || a.points[j].x != c.points[j].x;
  }
  CHECK(differs);

  const OuParams ou = OuParams::from_epsilon(2.0, 0.3);
  const NoisePath oa = sample_ou_path(g, ou, RngStream{9, 1});
  const NoisePath ob = sample_ou_path(g, ou, RngStream{9, 1});
  for (std::size_t j = 0; j < oa.points.size(); ++j) {
    CHECK(oa.points[j].z == ob.points[j].z);
  }
}
