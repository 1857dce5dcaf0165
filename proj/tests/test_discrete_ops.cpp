#include <doctest.h>

#include <cmath>
#include <random>

#include "vhjlab/discrete_ops.hpp"
#include "vhjlab/domain.hpp"
#include "vhjlab/parabolic.hpp"

using namespace vhj;

namespace {

Field sample_1d(const GridPtr& g, double (*fn)(double)) {
  Field f = make_field(g);
  for (int i = 0; i < g->node_count(); ++i) f[i] = fn(g->x[i]);
  return f;
}

int interior_node_at(const Grid& g, double x) {
  int best = -1;
  double err = 1e9;
  for (int i = 0; i < g.node_count(); ++i) {
    if (g.is_boundary(i)) continue;
    const double e = std::abs(g.x[i] - x);
    if (e < err) {
      err = e;
      best = i;
    }
  }
  return best;
}

} // namespace

TEST_CASE("stencil differences are exact on linear fields") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  Field u = sample_1d(g, [](double x) { return 2.0 * x; });
  const int i = interior_node_at(*g, 0.5);
  const auto s = sample_stencil(*g, u.values, i);
  CHECK(s.backward[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.forward[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.centered[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(s.second[0] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("second differences are exact on quadratics") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  Field u = sample_1d(g, [](double x) { return 0.5 * x * x; });
  for (int i : g->interior_nodes()) {
    const auto s = sample_stencil(*g, u.values, i);
    CHECK(s.second[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("hamiltonian is exact on linear fields") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  Field u = sample_1d(g, [](double x) { return 2.0 * x; });
  const int i = interior_node_at(*g, 0.5);
  const auto s = sample_stencil(*g, u.values, i);
  CHECK(hamiltonian(s, 3.0) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("hamiltonian vanishes on constants") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  Field u = make_field(g, 4.25);
  for (int i : g->interior_nodes()) {
    const auto s = sample_stencil(*g, u.values, i);
    CHECK(hamiltonian(s, 2.0) == 0.0);
    CHECK(hamiltonian(s, 3.5) == 0.0);
  }
}

TEST_CASE("godunov resolves kinks by shock and rarefaction rules") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  const int i = interior_node_at(*g, 0.5);
  // Tent -|x - 1/2|: D- = 1 and D+ = -1 both propose slope magnitude 1 and
  // the flux takes the shock maximum.
  Field tent = sample_1d(g, [](double x) { return -std::abs(x - 0.5); });
  const auto st = sample_stencil(*g, tent.values, i);
  CHECK(hamiltonian(st, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  // Vee |x - 1/2|: D- = -1, D+ = 1 span a rarefaction fan that contains the
  // zero slope, so the upwind flux vanishes.
  Field vee = sample_1d(g, [](double x) { return std::abs(x - 0.5); });
  const auto sv = sample_stencil(*g, vee.values, i);
  CHECK(hamiltonian(sv, 2.0) == 0.0);
}

TEST_CASE("p-laplacian reduces to the laplacian at p = 2") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  Field u = sample_1d(g, [](double x) { return 0.5 * x * x; });
  const int i = interior_node_at(*g, 0.5);
  const auto s = sample_stencil(*g, u.values, i);
  CHECK(p_laplacian(s, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("p-laplacian of x^2/2 at p = 3 approaches (p-1)|x|") {
  auto g = build_interval_grid(0.0, 2.0, 256);
  Field u = sample_1d(g, [](double x) { return 0.5 * x * x; });
  const int i = interior_node_at(*g, 1.0);
  const auto s = sample_stencil(*g, u.values, i);
  CHECK(p_laplacian(s, 3.0) == doctest::Approx(2.0).epsilon(2e-2));
}

TEST_CASE("p-laplacian vanishes on linear fields") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  Field u = sample_1d(g, [](double x) { return 3.0 * x; });
  const int i = interior_node_at(*g, 0.5);
  const auto s = sample_stencil(*g, u.values, i);
  for (double p : {2.0, 2.5, 3.0, 4.0})
    CHECK(p_laplacian(s, p) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("flux-form diffusion matches the expanded form at p = 2") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  Field u = sample_1d(g, [](double x) { return std::sin(3.0 * x); });
  for (int i : g->interior_nodes()) {
    const auto s = sample_stencil(*g, u.values, i);
    CHECK(p_laplacian_flux_1d(s, 2.0, g->spacing) ==
          doctest::Approx(p_laplacian(s, 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("spatial residual vanishes on constants with zero source") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  Field u = make_field(g, 5.0);
  for (int i = 0; i < g->node_count(); ++i)
    CHECK(spatial_residual(*g, u.values, i, 2.0, 3.0, 0.0) == 0.0);
}

TEST_CASE("spatial residual cancels a matched source on linear data") {
  auto g = build_interval_grid(0.0, 1.0, 64);
  Field u = sample_1d(g, [](double x) { return 2.0 * x; });
  const int i = interior_node_at(*g, 0.5);
  CHECK(spatial_residual(*g, u.values, i, 2.0, 3.0, 8.0) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("spatial residual on x^2/2 with p = q = 2") {
  auto g = build_interval_grid(0.0, 1.0, 512);
  Field u = sample_1d(g, [](double x) { return 0.5 * x * x; });
  const int i = interior_node_at(*g, 0.5);
  // -(laplacian = 1) + |Du|^2 = 0.25 at x = 0.5
  CHECK(spatial_residual(*g, u.values, i, 2.0, 2.0, 0.0) ==
        doctest::Approx(-0.75).epsilon(2e-2));
}

TEST_CASE("residual consistency improves as the sine grid refines") {
  double prev_err = 0.0;
  bool first = true;
  for (int n : {64, 128, 256, 512}) {
    auto g = build_interval_grid(0.0, 1.0, n);
    Field u = sample_1d(g, [](double x) { return std::sin(M_PI * x); });
    double worst = 0.0;
    for (int i : g->interior_nodes()) {
      const double x = g->x[i];
      const double du = M_PI * std::cos(M_PI * x);
      const double d2u = -M_PI * M_PI * std::sin(M_PI * x);
      const double exact = -d2u + std::pow(std::abs(du), 3.0);
      const double got = spatial_residual(*g, u.values, i, 2.0, 3.0, 0.0);
      worst = std::max(worst, std::abs(got - exact));
    }
    if (!first) CHECK(worst < 0.6 * prev_err);
    prev_err = worst;
    first = false;
  }
}

TEST_CASE("one euler step is monotone in the neighbor data") {
  auto g = build_interval_grid(0.0, 1.0, 32);
  std::mt19937_64 eng(42);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  StepControl ctl;
  ctl.gradient_cap = 8.0;
  for (int rep = 0; rep < 40; ++rep) {
    Field u = make_field(g), v = make_field(g);
    for (int i = 0; i < g->node_count(); ++i) {
      u[i] = unif(eng);
      v[i] = u[i] + std::abs(unif(eng)); // v >= u
    }
    const int i = 1 + static_cast<int>(eng() % (g->node_count() - 2));
    v[i] = u[i]; // equal at the tested node
    const double dt = std::min(cfl_dt(u, 2.0, 3.0, ctl), cfl_dt(v, 2.0, 3.0, ctl));
    const double fu = u[i] - dt * spatial_residual(*g, u.values, i, 2.0, 3.0, 0.0);
    const double fv = v[i] - dt * spatial_residual(*g, v.values, i, 2.0, 3.0, 0.0);
    CHECK(fu <= fv + 1e-12);
  }
}

TEST_CASE("p-laplacian stays bounded near zero gradient") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  Field u = make_field(g, 1.0);
  const int i = interior_node_at(*g, 0.5);
  u[i] += 1e-9;
  const auto s = sample_stencil(*g, u.values, i);
  for (double p : {2.0, 3.0, 4.0})
    CHECK(std::abs(p_laplacian(s, p)) < 1e3);
}

TEST_CASE("signed and magnitude powers") {
  CHECK(signed_power(-2.0, 3.0) == doctest::Approx(-8.0));
  CHECK(signed_power(2.0, 3.0) == doctest::Approx(8.0));
  CHECK(magnitude_power(-2.0, 3.0) == doctest::Approx(8.0));
  CHECK(magnitude_power(0.0, 0.0) == 1.0);
  CHECK(magnitude_power(0.0, 2.0) == 0.0);
}

TEST_CASE("boundary stencils use the inward difference") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  Field u = sample_1d(g, [](double x) { return 2.0 * x; });
  const auto s0 = sample_stencil(*g, u.values, 0);
  CHECK(s0.forward[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s0.centered[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s0.backward[0] == 0.0); // no outside neighbor, no upwind branch
  const auto sn = sample_stencil(*g, u.values, g->node_count() - 1);
  CHECK(sn.backward[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sn.centered[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sn.forward[0] == 0.0);
}

TEST_CASE("boundary hamiltonian keeps only the realizable upwind branch") {
  auto g = build_interval_grid(0.0, 1.0, 16);
  // Rising ramp: at the left edge no admissible slope generates Hamiltonian,
  // at the right edge the inward difference drives it.
  Field u = sample_1d(g, [](double x) { return 2.0 * x; });
  const auto s0 = sample_stencil(*g, u.values, 0);
  CHECK(hamiltonian(s0, 3.0) == 0.0);
  const auto sn = sample_stencil(*g, u.values, g->node_count() - 1);
  CHECK(hamiltonian(sn, 3.0) == doctest::Approx(8.0).epsilon(1e-12));
  // Falling ramp mirrors it.
  Field w = sample_1d(g, [](double x) { return -2.0 * x; });
  const auto t0 = sample_stencil(*g, w.values, 0);
  CHECK(hamiltonian(t0, 3.0) == doctest::Approx(8.0).epsilon(1e-12));
  const auto tn = sample_stencil(*g, w.values, g->node_count() - 1);
  CHECK(hamiltonian(tn, 3.0) == 0.0);
}

TEST_CASE("max one-sided gradient matches the hand value") {
  auto g = build_interval_grid(0.0, 1.0, 4);
  Field u = make_field(g);
  u[2] = 0.25; // slopes of +-1 around the middle node
  CHECK(max_onesided_gradient(*g, u.values) == doctest::Approx(1.0));
}
