#include <doctest.h>

#include <cmath>
#include <random>

#include "vhjlab/barriers.hpp"
#include "vhjlab/domain.hpp"
#include "vhjlab/errors.hpp"
#include "vhjlab/stationary.hpp"

using namespace vhj;

namespace {

StationaryProblem make_problem(GridPtr g, double lambda, SpaceFn f, SpaceFn bc) {
  StationaryProblem pr;
  pr.grid = std::move(g);
  pr.p = 2.0;
  pr.q = 3.0;
  pr.lambda = lambda;
  pr.source = std::move(f);
  pr.boundary = std::move(bc);
  return pr;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("constants solve the discounted problem exactly") {
  auto g = build_interval_grid(0.0, 1.0, 48);
  const double c0 = 0.7, lambda = 0.5;
  auto pr = make_problem(g, lambda,
                         [=](double, double) { return lambda * c0; },
                         [=](double, double) { return c0; });
  StationaryOptions opt;
  // dt here is ~1e-4, so residuals below ulp(0.7)/dt ~ 1e-12 cannot move the
  // iterate; the tolerance must sit above that floor for a clean exit.
  opt.tol = 5e-12;
  opt.deflate = true;
  auto res = solve_stationary(pr, opt);
  for (double v : res.u.values) CHECK(v == doctest::Approx(c0).epsilon(1e-11));
  CHECK(res.residual <= res.tol);
}

TEST_CASE("zero data yields the zero solution") {
  auto g = build_interval_grid(0.0, 1.0, 48);
  auto pr = make_problem(g, 1.0, [](double, double) { return 0.0; },
                         [](double, double) { return 0.0; });
  StationaryOptions opt;
  opt.tol = 1e-13;
  auto res = solve_stationary(pr, opt);
  for (double v : res.u.values) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("solution respects the discount bounds of the data") {
  auto g = build_interval_grid(0.0, 1.0, 48);
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 3; ++rep) {
    const double a0 = unif(eng), a1 = unif(eng), b0 = unif(eng);
    const double lambda = 1.0;
    auto pr = make_problem(
        g, lambda,
        [=](double x, double) { return a0 + a1 * std::sin(3.0 * x); },
        [=](double x, double) { return 0.3 * b0 * x; });
    StationaryOptions opt;
    opt.deflate = true;
    auto res = solve_stationary(pr, opt);
    const double f_norm = std::abs(a0) + std::abs(a1);
    const double g_norm = 0.3 * std::abs(b0);
    const double bound = f_norm / lambda + g_norm + 1e-6;
    for (double v : res.u.values) CHECK(std::abs(v) <= bound);
  }
}

TEST_CASE("the fixed point does not depend on the initialization") {
  auto g = build_interval_grid(0.0, 1.0, 48);
  auto pr = make_problem(g, 1.0,
                         [](double x, double) { return std::sin(2.0 * x); },
                         [](double, double) { return 0.2; });
  StationaryOptions cold;
  cold.tol = 1e-10;
  cold.deflate = true;
  auto a = solve_stationary(pr, cold);
  StationaryOptions warm = cold;
  std::vector<double> init(g->node_count());
  for (int i = 0; i < g->node_count(); ++i)
    init[i] = 0.5 - 0.3 * g->x[i];
  warm.init = init;
  auto b = solve_stationary(pr, warm);
  CHECK(max_abs_diff(a.u.values, b.u.values) <= 10.0 * a.tol);
}

TEST_CASE("deflation leaves the fixed point unchanged") {
  auto g = build_interval_grid(0.0, 1.0, 48);
  // The datum sits far above the solution so it never clips: a clipped datum
  // pins the constant mode by itself and suspends deflation for good.
  auto pr = make_problem(g, 0.5,
                         [](double x, double) { return std::cos(2.0 * x); },
                         [](double, double) { return 10.0; });
  StationaryOptions off;
  off.tol = 1e-10;
  off.deflate = false;
  StationaryOptions on = off;
  on.deflate = true;
  auto a = solve_stationary(pr, off);
  auto b = solve_stationary(pr, on);
  CHECK(b.deflations > 0);
  CHECK(max_abs_diff(a.u.values, b.u.values) <= 10.0 * a.tol);
  CHECK(b.steps <= a.steps);
}

TEST_CASE("iteration budget exhaustion reports no convergence") {
  auto g = build_interval_grid(0.0, 1.0, 48);
  auto pr = make_problem(g, 0.01,
                         [](double x, double) { return std::sin(5.0 * x); },
                         [](double, double) { return 0.0; });
  StationaryOptions opt;
  opt.tol = 1e-14;
  opt.control.max_steps = 10;
  CHECK_THROWS_AS(solve_stationary(pr, opt), SolverError);
}

TEST_CASE("large datum stays inactive in the state-constraint solve") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  const double lambda = 1.0;
  auto norms = compute_domain_norms(*g, g->delta, nullptr);
  norms.f_norm = 1.0;
  auto par = auto_constants(2.0, 3.0, g->delta, norms, lambda);
  StateConstraintOptions opt;
  opt.cross_check = true;
  opt.base.deflate = true;
  auto res = solve_state_constraint(
      g, 2.0, 3.0, lambda, [](double, double) { return 0.0; }, par.m2, opt);
  CHECK(res.big_datum == doctest::Approx(2.0 * par.m2 / lambda));
  CHECK(res.constraint_slack > 0.0);
  CHECK(res.max_value < res.big_datum - g->spacing);
  // one-sided scheme agreement at the spec scale 5 h^beta
  const double beta = 0.5;
  CHECK(res.cross_check_gap <= 5.0 * std::pow(g->spacing, beta));
}

TEST_CASE("discounted state-constraint values sit inside the ergodic band") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  const double lambda = 1.0;
  auto norms = compute_domain_norms(*g, g->delta, nullptr);
  norms.f_norm = 1.0;
  auto par = auto_constants(2.0, 3.0, g->delta, norms, lambda);
  StateConstraintOptions opt;
  opt.cross_check = false;
  opt.base.deflate = true;
  auto res = solve_state_constraint(
      g, 2.0, 3.0, lambda, [](double, double) { return -1.0; }, par.m2, opt);
  const double band = std::max(1.0, par.m2);
  for (double v : res.u.values) {
    CHECK(lambda * v <= band + 1e-8);
    CHECK(lambda * v >= -band - 1e-8);
  }
}

TEST_CASE("doubling the inactive datum does not move the solution") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  const double lambda = 1.0;
  auto norms = compute_domain_norms(*g, g->delta, nullptr);
  norms.f_norm = 1.0;
  auto par = auto_constants(2.0, 3.0, g->delta, norms, lambda);
  StateConstraintOptions opt;
  opt.cross_check = false;
  opt.base.tol = 1e-11;
  opt.base.deflate = true;
  auto f = [](double x, double) { return 0.5 * std::sin(2.0 * x); };
  auto a = solve_state_constraint(g, 2.0, 3.0, lambda, f, par.m2, opt);
  auto b = solve_state_constraint(g, 2.0, 3.0, lambda, f, 2.0 * par.m2, opt);
  CHECK(max_abs_diff(a.u.values, b.u.values) <= 10.0 * opt.base.tol);
}

TEST_CASE("adding a constant to the source shifts the solution by s over lambda") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  const double lambda = 0.5, s = 0.8;
  auto norms = compute_domain_norms(*g, g->delta, nullptr);
  norms.f_norm = 2.0;
  auto par = auto_constants(2.0, 3.0, g->delta, norms, lambda);
  StateConstraintOptions opt;
  opt.cross_check = false;
  opt.base.tol = 1e-11;
  opt.base.deflate = true;
  auto f0 = [](double x, double) { return 0.3 * std::cos(3.0 * x); };
  auto fs = [=](double x, double) { return 0.3 * std::cos(3.0 * x) + s; };
  auto a = solve_state_constraint(g, 2.0, 3.0, lambda, f0, par.m2, opt);
  auto b = solve_state_constraint(g, 2.0, 3.0, lambda, fs, par.m2, opt);
  double worst = 0.0;
  for (size_t i = 0; i < a.u.values.size(); ++i)
    worst = std::max(worst,
                     std::abs(b.u.values[i] - a.u.values[i] - s / lambda));
  CHECK(worst <= 1e-8);
}

TEST_CASE("a hopeless constraint reports ConstraintActive") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  StateConstraintOptions opt;
  opt.cross_check = false;
  // m2 far below the source scale: the big datum clips immediately
  CHECK_THROWS_AS(solve_state_constraint(g, 2.0, 3.0, 1.0,
                                         [](double, double) { return 5.0; },
                                         1e-4, opt),
                  SolverError);
}
