#include "vhjlab/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "march_kernel.hpp"
#include "vhjlab/errors.hpp"

namespace vhj {

namespace {

void validate(const StationaryProblem& prob, const StationaryOptions& opt) {
  if (!(prob.p >= 2.0) || !(prob.q > prob.p))
    throw ConfigError("exponents must satisfy q > p >= 2 (got p=" +
                      std::to_string(prob.p) + ", q=" + std::to_string(prob.q) +
                      ")");
  if (!(prob.lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (!prob.source) throw ConfigError("source data is required");
  if (prob.use_datum && !prob.boundary)
    throw ConfigError("boundary datum is required when use_datum is set");
  if (!(opt.control.cfl_safety > 0.0) || opt.control.cfl_safety > 1.0)
    throw ConfigError("cfl_safety must lie in (0, 1]");
  if (opt.deflate_interval < 1)
    throw ConfigError("deflate_interval must be at least 1");
}

} // namespace

StationaryResult solve_stationary(const StationaryProblem& prob,
                                  const StationaryOptions& opt) {
  validate(prob, opt);
  const Grid& g = *prob.grid;
  const int n = g.node_count();

  std::vector<double> fbuf(n), u;
  double sup_f = 0.0;
  for (int i = 0; i < n; ++i) {
    fbuf[i] = prob.source(g.x[i], g.dimension == 2 ? g.y[i] : 0.0);
    if (!std::isfinite(fbuf[i]))
      throw ConfigError("source is not finite at node " + std::to_string(i));
    sup_f = std::max(sup_f, std::abs(fbuf[i]));
  }

  if (opt.init) {
    if (static_cast<int>(opt.init->size()) != n)
      throw ConfigError("warm start has the wrong node count");
    u = *opt.init;
  } else {
    u.assign(n, 0.0);
  }

  detail::Kernel kernel(prob.grid, prob.p, prob.q, prob.lambda);
  std::vector<double> gbuf;
  double sup_g = 0.0;
  if (prob.use_datum) {
    for (int node : kernel.boundary_nodes()) {
      const double v =
          prob.boundary(g.x[node], g.dimension == 2 ? g.y[node] : 0.0);
      if (!std::isfinite(v))
        throw ConfigError("boundary datum is not finite at node " +
                          std::to_string(node));
      gbuf.push_back(v);
      sup_g = std::max(sup_g, std::abs(v));
    }
  }

  const double tol = opt.tol > 0.0 ? opt.tol : 1e-8 * (1.0 + sup_f);

  // The cap only matters when the measured gradient exceeds it, so generous
  // values are safe; the datum level is excluded on purpose (levels do not
  // steepen profiles).
  double cap_eff = opt.control.gradient_cap;
  if (cap_eff <= 0.0) {
    const double g0 = kernel.prepare(u);
    cap_eff =
        std::max(8.0 * (1.0 + sup_f) / std::sqrt(g.spacing), 2.0 * g0 + 1.0);
  }

  StationaryResult out;
  out.tol = tol;
  const double inv_lambda_bound = 1.0 / std::max(prob.lambda, 1e-12);

  long long step = 0;
  long long frozen_streak = 0;
  long long cycle_streak = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  long long best_step = 0;
  // Steps without a new best residual before the march is declared stuck.
  // Genuinely slow modes still improve the residual almost every step (the
  // decrement residual * dt * rate stays representable), so a streak this
  // long only ever happens at the arithmetic floor.
  const long long stagnation_window = 50000;

  while (true) {
    const double gmax = kernel.prepare(u);
    const double ghat = std::min(gmax, cap_eff);
    double dt = detail::step_bound(g.spacing, g.dimension, prob.p, prob.q,
                                   ghat, opt.control.cfl_safety);
    dt = std::min(dt, opt.control.cfl_safety * inv_lambda_bound);
    dt = std::max(dt, opt.control.dt_floor);

    const detail::StepStats st =
        kernel.step(u, dt, fbuf, prob.use_datum ? &gbuf : nullptr);
    ++step;
    if (!st.finite)
      throw SolverError(SolverError::Kind::NonFinite,
                        "iterate lost finiteness at step " +
                            std::to_string(step));
    out.datum_ever_active = out.datum_ever_active || st.datum_active;

    if (st.max_abs_residual < tol) {
      out.residual = st.max_abs_residual;
      break;
    }

    bool deflated_now = false;
    if (opt.deflate && !out.datum_ever_active &&
        step % opt.deflate_interval == 0) {
      // st measures the residual at the pre-step iterate; the constant mode
      // decays by exactly (1 - lambda dt) across the step, so scale the mean
      // accordingly or the shift overshoots by dt * mean(residual).
      const double shift = -(1.0 - prob.lambda * dt) * (st.sum_residual / n) /
                           prob.lambda;
      if (std::isfinite(shift) && shift != 0.0) {
        bool moved = false;
        for (double& v : u) {
          const double nv = v + shift;
          moved = moved || (nv != v);
          v = nv;
        }
        if (moved) {
          ++out.deflations;
          deflated_now = true;
        }
      }
    }

    // The update map is a pure function of the iterate, so a step that leaves
    // every node bitwise unchanged (or returns every node to its value two
    // steps back) proves the march can never move again; only a pending
    // deflation shift could still change it, hence the interval-long wait
    // while deflation is armed. Exiting with the honest residual is the best
    // double precision can do for this tolerance.
    frozen_streak = (st.changed || deflated_now) ? 0 : frozen_streak + 1;
    cycle_streak =
        (step >= 2 && st.repeat2 && !deflated_now) ? cycle_streak + 1 : 0;
    const bool deflation_armed = opt.deflate && !out.datum_ever_active;
    const long long stuck_after = deflation_armed ? opt.deflate_interval + 1 : 1;
    if (frozen_streak >= stuck_after || cycle_streak >= stuck_after) {
      out.residual = st.max_abs_residual;
      break;
    }

    if (st.max_abs_residual < best_residual) {
      best_residual = st.max_abs_residual;
      best_step = step;
    } else if (step - best_step >= stagnation_window) {
      out.residual = st.max_abs_residual;
      break;
    }

    if (step >= opt.control.max_steps)
      throw SolverError(SolverError::Kind::NoConvergence,
                        "no steady state within " + std::to_string(step) +
                            " steps (residual " +
                            std::to_string(st.max_abs_residual) + ", tol " +
                            std::to_string(tol) + ")");
  }

  out.steps = step;
  out.u.grid = prob.grid;
  out.u.values = std::move(u);
  return out;
}

StateConstraintResult solve_state_constraint(
    GridPtr grid, double p, double q, double lambda, const SpaceFn& f,
    double m2, const StateConstraintOptions& opt) {
  if (!(m2 > 0.0)) throw ConfigError("m2 must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  const double big = 2.0 * m2 / lambda;

  StationaryProblem prob;
  prob.grid = grid;
  prob.p = p;
  prob.q = q;
  prob.lambda = lambda;
  prob.source = f;
  prob.boundary = [big](double, double) { return big; };
  prob.use_datum = true;

  StationaryOptions base = opt.base;
  base.deflate = true; // valid until a datum row clips, then auto-suspended
  StationaryResult primal = solve_stationary(prob, base);

  StateConstraintResult out;
  out.big_datum = big;
  out.steps = primal.steps;
  out.residual = primal.residual;
  out.max_value = *std::max_element(primal.u.values.begin(),
                                    primal.u.values.end());
  out.constraint_slack = (big - grid->spacing) - out.max_value;
  if (out.constraint_slack <= 0.0)
    throw SolverError(SolverError::Kind::ConstraintActive,
                      "solution reached the artificial datum level; increase "
                      "m2 or refine");

  if (opt.cross_check) {
    StationaryProblem free_prob = prob;
    free_prob.use_datum = false;
    free_prob.boundary = nullptr;
    StationaryOptions cold = opt.base;
    cold.init.reset(); // independent start, so agreement is informative
    cold.deflate = true;
    const StationaryResult alt = solve_stationary(free_prob, cold);
    double gap = 0.0;
    for (size_t i = 0; i < alt.u.values.size(); ++i)
      gap = std::max(gap, std::abs(alt.u.values[i] - primal.u.values[i]));
    out.cross_check_gap = gap;
  }

  out.u = std::move(primal.u);
  return out;
}

} // namespace vhj
