#include "vhjlab/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "vhjlab/errors.hpp"

namespace vhj {

std::vector<double> default_lambda_sequence() {
  std::vector<double> out;
  for (int k = 1; k <= 10; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

ErgodicResult ergodic_solve(GridPtr grid, double p, double q, const SpaceFn& f,
                            const std::vector<double>& lambdas,
                            const ErgodicOptions& opt) {
  if (!grid) throw ConfigError("grid is required");
  if (lambdas.empty()) throw ConfigError("lambda sequence is empty");
  for (size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0))
      throw ConfigError("lambda sequence must be positive");
    if (k > 0 && !(lambdas[k] < lambdas[k - 1]))
      throw ConfigError("lambda sequence must be strictly decreasing");
  }

  const Grid& g = *grid;
  const int n = g.node_count();
  std::vector<double> fvals(n);
  for (int i = 0; i < n; ++i)
    fvals[i] = f(g.x[i], g.dimension == 2 ? g.y[i] : 0.0);

  int anchor = opt.anchor;
  if (anchor < 0) {
    anchor = 0;
    for (int i = 1; i < n; ++i)
      if (g.dist[i] > g.dist[anchor]) anchor = i;
  }
  if (anchor >= n) throw ConfigError("anchor node out of range");

  // The barrier constants fix the artificial datum level; they depend on the
  // geometry and on sup |f| but not on lambda, so calibrate once at the
  // smallest discount (the lam-factor is max(lambda, 1), constant below 1).
  const double delta = opt.delta > 0.0 ? opt.delta : g.delta;
  const DomainNorms norms = compute_domain_norms(g, delta, &fvals);
  const BarrierParams params =
      auto_constants(p, q, delta, norms, lambdas.front());

  ErgodicResult out;
  out.anchor = anchor;
  out.params = params;
  out.band = std::max(norms.f_norm, params.m2);

  StateConstraintOptions sc;
  sc.base.control = opt.control;
  sc.cross_check = opt.cross_check;

  std::vector<double> warm;
  double c_prev = 0.0;
  for (size_t k = 0; k < lambdas.size(); ++k) {
    const double lambda = lambdas[k];
    // The iterate lives at the scale of the big datum 2 m2 / lambda, and
    // update increments below ulp(scale) / dt cannot move it, so a fixed
    // absolute tolerance becomes unreachable at small lambda. Track the
    // scale instead: the constant estimate only feels lambda * residual,
    // so this loses nothing.
    if (opt.tol > 0.0)
      sc.base.tol = opt.tol;
    else
      sc.base.tol = 1e-7 * (1.0 + 2.0 * params.m2 / lambda);
    if (k > 0) {
      // w_{k-1} pins the profile; the level of u_lambda is about -c/lambda.
      std::vector<double> init = out.profiles.back();
      for (double& v : init) v -= c_prev / lambda;
      sc.base.init = std::move(init);
    }
    const StateConstraintResult r =
        solve_state_constraint(grid, p, q, lambda, f, params.m2, sc);

    ErgodicLevel lvl;
    lvl.lambda = lambda;
    lvl.c_estimate = -lambda * r.u.values[anchor];
    lvl.cross_check_gap = r.cross_check_gap;
    lvl.residual = r.residual;
    lvl.steps = r.steps;
    lvl.big_datum = r.big_datum;
    lvl.constraint_slack = r.constraint_slack;

    std::vector<double> w = r.u.values;
    const double at_anchor = w[anchor];
    for (double& v : w) v -= at_anchor;

    out.band_excess =
        std::max(out.band_excess, std::abs(lvl.c_estimate) - out.band);
    out.levels.push_back(lvl);
    out.profiles.push_back(std::move(w));
    c_prev = lvl.c_estimate;
  }

  out.c = out.levels.back().c_estimate;
  out.profile = out.profiles.back();
  if (out.levels.size() >= 2) {
    const double last = out.levels[out.levels.size() - 1].c_estimate;
    const double prev = out.levels[out.levels.size() - 2].c_estimate;
    out.converged = std::abs(last - prev) < 1e-2 * (1.0 + std::abs(last));
  }
  out.band_excess = std::max(out.band_excess, 0.0);
  return out;
}

ShiftCheck shift_check(const ErgodicResult& base, const ErgodicResult& shifted,
                       double s) {
  if (base.profile.size() != shifted.profile.size())
    throw ConfigError("shift check requires matching grids");
  ShiftCheck out;
  out.c_error = std::abs(shifted.c - (base.c - s));
  for (size_t i = 0; i < base.profile.size(); ++i)
    out.profile_gap =
        std::max(out.profile_gap, std::abs(shifted.profile[i] - base.profile[i]));
  return out;
}

} // namespace vhj
