#include <doctest.h>

#include <cmath>
#include <random>

#include "vhjlab/analysis.hpp"
#include "vhjlab/domain.hpp"
#include "vhjlab/errors.hpp"
#include "vhjlab/stationary.hpp"

using namespace vhj;

TEST_CASE("critical exponent values") {
  CHECK(beta_exponent(2.0, 3.0) == 0.5);
  CHECK(beta_exponent(2.0, 4.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
  CHECK(beta_exponent(3.0, 4.0) == 0.5);
  CHECK(beta_exponent(3.0, 5.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-16));
}

TEST_CASE("critical exponent range and monotonicity") {
  for (double p : {2.0, 2.5, 3.0}) {
    double prev = 0.0;
    for (double q = p + 0.5; q < p + 6.0; q += 0.5) {
      const double b = beta_exponent(p, q);
      CHECK(b > 0.0);
      CHECK(b < 1.0);
      CHECK(b > prev);
      prev = b;
    }
  }
  CHECK_THROWS_AS(beta_exponent(3.0, 3.0), ConfigError);
  CHECK_THROWS_AS(beta_exponent(3.0, 2.0), ConfigError);
  CHECK_THROWS_AS(beta_exponent(1.5, 3.0), ConfigError);
}

TEST_CASE("exponent identities at the test matrix") {
  for (auto [p, q] : {std::pair{2.0, 3.0}, std::pair{2.0, 4.0},
                      std::pair{3.0, 4.0}, std::pair{3.0, 5.0}}) {
    const double b = beta_exponent(p, q);
    CHECK(std::abs((b - 1.0) * (q - p + 2.0) - (b - 2.0)) <= 1e-15);
    CHECK(std::abs(q * (b - 1.0) - ((p - 2.0) * (b - 1.0) + (b - 2.0))) <=
          1e-15);
  }
}

TEST_CASE("seminorm of the identity map at exponent one") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  std::vector<double> u(g->x.begin(), g->x.end());
  auto rep = holder_seminorm(*g, u, 1.0);
  CHECK(rep.seminorm == doctest::Approx(1.0).epsilon(1e-13));
  // every pair ties, so the lexicographically first one is kept
  CHECK(rep.node_a == 0);
  CHECK(rep.node_b == 1);
}

TEST_CASE("seminorm of the square root at its own exponent") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  std::vector<double> u(g->node_count());
  for (int i = 0; i < g->node_count(); ++i) u[i] = std::sqrt(g->x[i]);
  auto rep = holder_seminorm(*g, u, 0.5);
  CHECK(rep.seminorm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.node_a == 0); // attained against the left endpoint
}

TEST_CASE("seminorm of a constant field vanishes") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  std::vector<double> u(g->node_count(), 3.25);
  auto rep = holder_seminorm(*g, u, 0.5);
  CHECK(rep.seminorm == 0.0);
}

TEST_CASE("raw coordinate seminorm matches the grid version") {
  auto g = build_interval_grid(0.0, 1.0, 24);
  std::vector<double> u(g->node_count());
  for (int i = 0; i < g->node_count(); ++i) u[i] = std::sin(3.0 * g->x[i]);
  auto a = holder_seminorm(*g, u, 0.5);
  auto b = holder_seminorm(g->x, {}, u, 0.5);
  CHECK(a.seminorm == b.seminorm);
  CHECK(a.node_a == b.node_a);
  CHECK(a.node_b == b.node_b);
}

TEST_CASE("seminorm is subadditive") {
  auto g = build_interval_grid(0.0, 1.0, 40);
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> u(g->node_count()), v(g->node_count()),
        w(g->node_count());
    for (int i = 0; i < g->node_count(); ++i) {
      u[i] = unif(eng);
      v[i] = unif(eng);
      w[i] = u[i] + v[i];
    }
    const double su = holder_seminorm(*g, u, 0.5).seminorm;
    const double sv = holder_seminorm(*g, v, 0.5).seminorm;
    const double sw = holder_seminorm(*g, w, 0.5).seminorm;
    CHECK(sw <= su + sv + 1e-12);
  }
}

namespace {

Trajectory synthetic_mean_trajectory(const std::vector<double>& times,
                                     const std::vector<double>& means) {
  Trajectory traj;
  traj.grid = build_interval_grid(0.0, 1.0, 4);
  traj.times = times;
  for (double m : means)
    traj.snapshots.emplace_back(traj.grid->node_count(), m);
  return traj;
}

} // namespace

TEST_CASE("slope of exactly linear decay") {
  std::vector<double> times, means;
  for (int k = 0; k <= 10; ++k) {
    times.push_back(k * 1.0);
    means.push_back(2.0 - 0.5 * k);
  }
  auto traj = synthetic_mean_trajectory(times, means);
  auto rep = asymptotic_slope(traj, 0.5);
  CHECK(rep.slope == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(rep.samples >= 3);
  CHECK(rep.max_mean_deviation == 0.0);
}

TEST_CASE("slope of a flat zero trajectory is exactly zero") {
  auto traj = synthetic_mean_trajectory({0.0, 1.0, 2.0, 3.0, 4.0},
                                        {0.0, 0.0, 0.0, 0.0, 0.0});
  auto rep = asymptotic_slope(traj, 0.8);
  CHECK(rep.slope == 0.0);
  CHECK(rep.intercept == 0.0);
}

TEST_CASE("too small a window reports insufficient samples") {
  std::vector<double> times, means;
  for (int k = 0; k <= 10; ++k) {
    times.push_back(k * 1.0);
    means.push_back(-0.1 * k);
  }
  auto traj = synthetic_mean_trajectory(times, means);
  CHECK_THROWS_AS(asymptotic_slope(traj, 0.05), SolverError);
}

TEST_CASE("comparing a problem to itself reports zero everywhere") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  ParabolicProblem pr;
  pr.grid = g;
  pr.p = 2.0;
  pr.q = 3.0;
  pr.horizon = 0.2;
  pr.source = [](double x, double, double) { return std::sin(2.0 * x); };
  pr.boundary = [](double, double, double) { return 0.1; };
  pr.initial = [](double, double) { return 0.1; };
  pr.source_time_dependent = false;
  StepControl ctl;
  ctl.snapshot_count = 4;
  auto rep = comparison_harness(pr, pr, ctl);
  CHECK(rep.max_violation == 0.0);
  CHECK(rep.max_gap == 0.0);
  CHECK(rep.min_gap == 0.0);
}

TEST_CASE("shifted zero data keeps an exact unit gap") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  ParabolicProblem lower, upper;
  for (ParabolicProblem* pr : {&lower, &upper}) {
    pr->grid = g;
    pr->p = 2.0;
    pr->q = 3.0;
    pr->horizon = 0.3;
    pr->source = [](double, double, double) { return 0.0; };
    pr->source_time_dependent = false;
  }
  lower.boundary = [](double, double, double) { return 0.0; };
  lower.initial = [](double, double) { return 0.0; };
  upper.boundary = [](double, double, double) { return 1.0; };
  upper.initial = [](double, double) { return 1.0; };
  StepControl ctl;
  ctl.snapshot_count = 5;
  auto rep = comparison_harness(lower, upper, ctl);
  CHECK(rep.max_violation == 0.0);
  CHECK(rep.max_gap == 1.0);
  CHECK(rep.min_gap == 1.0);
}

TEST_CASE("ordered data stay ordered") {
  auto g = build_interval_grid(0.0, 1.0, 48);
  std::mt19937_64 eng(17);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 4; ++rep) {
    const double a0 = unif(eng), s = unif(eng), b = unif(eng);
    ParabolicProblem lower, upper;
    for (ParabolicProblem* pr : {&lower, &upper}) {
      pr->grid = g;
      pr->p = 2.0;
      pr->q = 3.0;
      pr->horizon = 0.2;
    }
    lower.source = [=](double x, double, double t) {
      return a0 * std::sin(3.0 * x - 2.0 * t);
    };
    lower.boundary = [=](double x, double, double) { return 0.1 * x; };
    lower.initial = [=](double x, double) { return 0.1 * x; };
    upper.source = [=](double x, double, double t) {
      return a0 * std::sin(3.0 * x - 2.0 * t) + s;
    };
    upper.boundary = [=](double x, double, double) { return 0.1 * x + s; };
    upper.initial = [=](double x, double) {
      return 0.1 * x + s + b * x * (1.0 - x);
    };
    StepControl ctl;
    ctl.snapshot_count = 4;
    auto report = comparison_harness(lower, upper, ctl);
    CHECK(report.max_violation <= 1e-10);
  }
}

TEST_CASE("attained boundary data obey the modulus bound") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  StationaryProblem pr;
  pr.grid = g;
  pr.p = 2.0;
  pr.q = 3.0;
  pr.lambda = 1.0;
  pr.source = [](double x, double) { return 0.3 * std::sin(2.0 * x); };
  pr.boundary = [](double x, double) { return 0.2 * x; };
  StationaryOptions opt;
  opt.tol = 1e-11;
  opt.deflate = true;
  auto res = solve_stationary(pr, opt);
  const double tol = 1e-6;
  const double ga = 0.0, gb = 0.2;
  REQUIRE(std::abs(res.u.values.front() - ga) <= tol);
  REQUIRE(std::abs(res.u.values.back() - gb) <= tol);
  const double beta = beta_exponent(2.0, 3.0);
  const double semi = holder_seminorm(*g, res.u.values, beta).seminorm;
  CHECK(std::abs(ga - gb) <= semi * std::pow(1.0, beta) + tol);
}

TEST_CASE("far points give positive supersolution margins") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  const double margin =
      far_field_supersolution_margin(*g, 2.0, 3.0, 1.0, {{-1.5, 0.0}});
  // worst node is x = 0 at distance 1.5: -2 + 27 - 1
  CHECK(margin == doctest::Approx(24.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      far_field_supersolution_margin(*g, 2.0, 3.0, 1.0, {{1.5, 0.0}}),
      ConfigError);
}
