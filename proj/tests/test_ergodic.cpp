#include <doctest.h>

#include <cmath>

#include "vhjlab/domain.hpp"
#include "vhjlab/ergodic.hpp"

using namespace vhj;

namespace {

ErgodicOptions fast_opts() {
  ErgodicOptions opt;
  opt.cross_check = false;
  return opt;
}

} // namespace

TEST_CASE("default discount ladder is geometric down to 2^-10") {
  auto seq = default_lambda_sequence();
  REQUIRE(seq.size() == 10);
  CHECK(seq.front() == 0.5);
  CHECK(seq.back() == doctest::Approx(std::ldexp(1.0, -10)).epsilon(1e-15));
  for (size_t k = 1; k < seq.size(); ++k)
    CHECK(seq[k] == doctest::Approx(0.5 * seq[k - 1]).epsilon(1e-15));
}

TEST_CASE("zero source has ergodic constant zero") {
  auto g = build_interval_grid(0.0, 1.0, 128);
  auto res = ergodic_solve(g, 2.0, 3.0, [](double, double) { return 0.0; },
                           default_lambda_sequence(), fast_opts());
  CHECK(std::abs(res.c) <= 1e-2);
  CHECK(res.converged);
  CHECK(res.band_excess == 0.0);
}

TEST_CASE("draining source f = -1 has ergodic constant one") {
  auto g = build_interval_grid(0.0, 1.0, 128);
  auto res = ergodic_solve(g, 2.0, 3.0, [](double, double) { return -1.0; },
                           default_lambda_sequence(), fast_opts());
  CHECK(res.c == doctest::Approx(1.0).epsilon(1e-6));
  for (const auto& lv : res.levels)
    CHECK(lv.c_estimate == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(res.converged);
}

TEST_CASE("constant sources shift the constant oppositely") {
  auto g = build_interval_grid(0.0, 1.0, 128);
  auto base = ergodic_solve(g, 2.0, 3.0, [](double, double) { return 0.0; },
                            default_lambda_sequence(), fast_opts());
  auto plus5 = ergodic_solve(g, 2.0, 3.0, [](double, double) { return 5.0; },
                             default_lambda_sequence(), fast_opts());
  CHECK(plus5.c == doctest::Approx(-5.0).epsilon(1e-4));
  auto chk = shift_check(base, plus5, 5.0);
  CHECK(chk.c_error <= 1e-2);
  CHECK(chk.profile_gap <= 1e-2);
}

TEST_CASE("shift check of a result against itself is exactly zero") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  auto res = ergodic_solve(g, 2.0, 3.0, [](double, double) { return -1.0; },
                           {0.5, 0.25, 0.125}, fast_opts());
  auto chk = shift_check(res, res, 0.0);
  CHECK(chk.c_error == 0.0);
  CHECK(chk.profile_gap == 0.0);
}

TEST_CASE("every level satisfies the discount band") {
  auto g = build_interval_grid(0.0, 1.0, 128);
  auto res = ergodic_solve(g, 2.0, 3.0, [](double, double) { return -2.0; },
                           default_lambda_sequence(), fast_opts());
  CHECK(res.band >= 2.0);
  for (const auto& lv : res.levels)
    CHECK(std::abs(lv.c_estimate) <= res.band);
  CHECK(res.band_excess == 0.0);
}

TEST_CASE("the constant does not depend on the anchor node") {
  auto g = build_interval_grid(0.0, 1.0, 96);
  ErgodicOptions a = fast_opts();
  ErgodicOptions b = fast_opts();
  b.anchor = 10; // interior but close to the boundary
  const auto lambdas = default_lambda_sequence();
  auto f = [](double, double) { return -1.0; };
  auto ra = ergodic_solve(g, 2.0, 3.0, f, lambdas, a);
  auto rb = ergodic_solve(g, 2.0, 3.0, f, lambdas, b);
  CHECK(std::abs(ra.c - rb.c) <= 1e-6);
  // profiles agree up to the constant fixed by the normalization node
  const double shift = ra.profile[5] - rb.profile[5];
  double worst = 0.0;
  for (size_t i = 0; i < ra.profile.size(); ++i)
    worst = std::max(worst, std::abs(ra.profile[i] - rb.profile[i] - shift));
  CHECK(worst <= 1e-6);
}

TEST_CASE("profiles vanish at the anchor exactly") {
  auto g = build_interval_grid(0.0, 1.0, 96);
  auto res = ergodic_solve(g, 2.0, 3.0, [](double, double) { return -1.0; },
                           {0.5, 0.25}, fast_opts());
  CHECK(res.profile[res.anchor] == 0.0);
  for (const auto& w : res.profiles) CHECK(w[res.anchor] == 0.0);
}

TEST_CASE("level table mirrors the requested ladder") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  const std::vector<double> lambdas = {0.5, 0.125, 0.03125};
  auto res = ergodic_solve(g, 2.0, 3.0, [](double, double) { return 1.0; },
                           lambdas, fast_opts());
  REQUIRE(res.levels.size() == lambdas.size());
  for (size_t k = 0; k < lambdas.size(); ++k) {
    CHECK(res.levels[k].lambda == lambdas[k]);
    CHECK(res.levels[k].big_datum > 0.0);
    CHECK(res.levels[k].constraint_slack > 0.0);
  }
  CHECK(res.c == res.levels.back().c_estimate);
}

TEST_CASE("cross-check gaps are reported when enabled") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  ErgodicOptions opt;
  opt.cross_check = true;
  auto res = ergodic_solve(g, 2.0, 3.0, [](double, double) { return -1.0; },
                           {0.5, 0.25}, opt);
  const double limit = 5.0 * std::pow(g->spacing, 0.5);
  for (const auto& lv : res.levels) CHECK(lv.cross_check_gap <= limit);
}
