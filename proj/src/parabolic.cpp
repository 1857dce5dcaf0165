#include "vhjlab/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "march_kernel.hpp"
#include "vhjlab/errors.hpp"

namespace vhj {

namespace {

void validate_exponents(double p, double q) {
  if (!(p >= 2.0) || !(q > p))
    throw ConfigError("exponents must satisfy q > p >= 2 (got p=" +
                      std::to_string(p) + ", q=" + std::to_string(q) + ")");
}

// Everything one marched problem carries between steps.
struct MarchState {
  const ParabolicProblem* prob;
  detail::Kernel kernel;
  std::vector<double> u;
  std::vector<double> fbuf;
  std::vector<double> gbuf;
  double cap_eff;
  double gmax_raw = 0.0; // from the latest prepare()
  Trajectory traj;

  MarchState(const ParabolicProblem& pr, const StepControl& c)
      : prob(&pr), kernel(pr.grid, pr.p, pr.q, 0.0) {
    const Grid& g = *pr.grid;
    validate_exponents(pr.p, pr.q);
    if (!pr.source || !pr.boundary || !pr.initial)
      throw ConfigError("source, boundary and initial data are all required");

    u.resize(g.node_count());
    fbuf.resize(g.node_count());
    double sup_u0 = 0.0;
    for (int i = 0; i < g.node_count(); ++i) {
      u[i] = pr.initial(g.x[i], g.dimension == 2 ? g.y[i] : 0.0);
      if (!std::isfinite(u[i]))
        throw ConfigError("initial data is not finite at node " +
                          std::to_string(i));
      sup_u0 = std::max(sup_u0, std::abs(u[i]));
    }

    traj.grid = pr.grid;
    traj.boundary_nodes = kernel.boundary_nodes();
    traj.sup_u0 = sup_u0;
    gbuf.resize(traj.boundary_nodes.size());

    // Compatibility of the initial data with the datum at t = 0.
    sample_boundary(0.0);
    double g0 = 0.0;
    for (size_t b = 0; b < gbuf.size(); ++b) {
      const int node = traj.boundary_nodes[b];
      g0 = std::max(g0, std::abs(gbuf[b]));
      if (std::abs(u[node] - gbuf[b]) > 1e-12)
        throw ConfigError("initial data does not match the boundary datum at "
                          "t=0 (node " +
                          std::to_string(node) + ")");
    }

    sample_source(0.0);
    double f0 = 0.0;
    for (double v : fbuf) f0 = std::max(f0, std::abs(v));

    cap_eff = c.gradient_cap > 0.0
                  ? c.gradient_cap
                  : 8.0 * (1.0 + sup_u0 + g0 + f0) / std::sqrt(g.spacing);

    traj.times.push_back(0.0);
    traj.snapshots.push_back(u);
    traj.boundary_values.push_back(gbuf);
  }

  void sample_source(double t) {
    const Grid& g = *prob->grid;
    for (int i = 0; i < g.node_count(); ++i) {
      fbuf[i] = prob->source(g.x[i], g.dimension == 2 ? g.y[i] : 0.0, t);
      if (!std::isfinite(fbuf[i]))
        throw SolverError(SolverError::Kind::NonFinite,
                          "source is not finite at node " + std::to_string(i) +
                              ", t=" + std::to_string(t));
      traj.sup_f = std::max(traj.sup_f, std::abs(fbuf[i]));
    }
  }

  void sample_boundary(double t) {
    const Grid& g = *prob->grid;
    for (size_t b = 0; b < gbuf.size(); ++b) {
      const int node = traj.boundary_nodes[b];
      gbuf[b] = prob->boundary(g.x[node], g.dimension == 2 ? g.y[node] : 0.0, t);
      if (!std::isfinite(gbuf[b]))
        throw SolverError(SolverError::Kind::NonFinite,
                          "boundary datum is not finite at node " +
                              std::to_string(node) + ", t=" + std::to_string(t));
      traj.sup_g = std::max(traj.sup_g, std::abs(gbuf[b]));
    }
  }

  double suggest_dt(const StepControl& c) {
    gmax_raw = kernel.prepare(u);
    const double ghat = std::min(gmax_raw, cap_eff);
    const Grid& g = *prob->grid;
    const double dt = detail::step_bound(g.spacing, g.dimension, prob->p,
                                         prob->q, ghat, c.cfl_safety);
    return std::max(dt, c.dt_floor);
  }
};

// Shared march driver: every state sees the same dt sequence (the min of the
// individual step bounds) and the same snapshot times.
void march(std::vector<MarchState>& states, const StepControl& c) {
  if (c.snapshot_count < 2)
    throw ConfigError("snapshot_count must be at least 2");
  if (!(c.cfl_safety > 0.0) || c.cfl_safety > 1.0)
    throw ConfigError("cfl_safety must lie in (0, 1]");
  if (!(c.dt_floor > 0.0)) throw ConfigError("dt_floor must be positive");

  const double horizon = states[0].prob->horizon;
  for (const MarchState& s : states) {
    if (s.prob->grid != states[0].prob->grid)
      throw ConfigError("paired problems must share one grid");
    if (s.prob->horizon != horizon)
      throw ConfigError("paired problems must share the horizon");
    if (s.prob->horizon < c.dt_floor)
      throw SolverError(SolverError::Kind::HorizonTooShort,
                        "horizon shorter than the dt floor");
  }

  const double detach_eps_base = 1e-6;
  long long total_steps = 0;
  double t = 0.0;

  for (int k = 1; k < c.snapshot_count; ++k) {
    const double t_target =
        horizon * static_cast<double>(k) / (c.snapshot_count - 1);
    std::vector<SnapshotDiag> diag(states.size());

    while (t < t_target) {
      double dt = std::numeric_limits<double>::infinity();
      for (MarchState& s : states) dt = std::min(dt, s.suggest_dt(c));
      bool hit = t + dt >= t_target;
      if (hit) dt = t_target - t;
      const double t_next = hit ? t_target : t + dt;

      for (size_t j = 0; j < states.size(); ++j) {
        MarchState& s = states[j];
        if (s.prob->source_time_dependent || total_steps == 0)
          s.sample_source(t);
        s.sample_boundary(t_next);
        const detail::StepStats st = s.kernel.step(s.u, dt, s.fbuf, &s.gbuf);
        if (!st.finite)
          throw SolverError(SolverError::Kind::NonFinite,
                            "solution lost finiteness at t=" +
                                std::to_string(t_next) + " (step " +
                                std::to_string(total_steps) + ")");
        diag[j].max_gradient = std::max(diag[j].max_gradient, s.gmax_raw);
        diag[j].min_dt = std::min(diag[j].min_dt, dt);
        diag[j].max_dt = std::max(diag[j].max_dt, dt);
        diag[j].steps += 1;
        for (size_t b = 0; b < s.gbuf.size(); ++b)
          s.traj.max_boundary_excess =
              std::max(s.traj.max_boundary_excess,
                       s.u[s.traj.boundary_nodes[b]] - s.gbuf[b]);
      }

      t = t_next;
      ++total_steps;
      if (total_steps > c.max_steps)
        throw SolverError(SolverError::Kind::NoConvergence,
                          "step budget exhausted before the horizon");
    }

    for (size_t j = 0; j < states.size(); ++j) {
      MarchState& s = states[j];
      const double detach_eps = detach_eps_base * (1.0 + s.traj.sup_g);
      int detached = 0;
      for (size_t b = 0; b < s.gbuf.size(); ++b) {
        const int node = s.traj.boundary_nodes[b];
        const double gap = s.gbuf[b] - s.u[node];
        if (gap > detach_eps) ++detached;
      }
      diag[j].detached_boundary_nodes = detached;
      s.traj.times.push_back(t_target);
      s.traj.snapshots.push_back(s.u);
      s.traj.boundary_values.push_back(s.gbuf);
      s.traj.interval_diag.push_back(diag[j]);
      s.traj.min_dt = std::min(s.traj.min_dt, diag[j].min_dt);
      s.traj.max_gradient = std::max(s.traj.max_gradient, diag[j].max_gradient);
    }
  }

  for (MarchState& s : states) s.traj.total_steps = total_steps;
}

} // namespace

double cfl_dt(const Field& field, double p, double q, const StepControl& c) {
  validate_exponents(p, q);
  const Grid& g = *field.grid;
  double gmax = max_onesided_gradient(g, field.values);
  if (c.gradient_cap > 0.0) gmax = std::min(gmax, c.gradient_cap);
  return std::max(
      detail::step_bound(g.spacing, g.dimension, p, q, gmax, c.cfl_safety),
      c.dt_floor);
}

std::vector<double> Trajectory::snapshot_mean() const {
  std::vector<double> out(snapshots.size(), 0.0);
  for (size_t k = 0; k < snapshots.size(); ++k) {
    double acc = 0.0;
    for (double v : snapshots[k]) acc += v;
    out[k] = acc / static_cast<double>(snapshots[k].size());
  }
  return out;
}

Trajectory solve_parabolic(const ParabolicProblem& prob, const StepControl& c) {
  std::vector<MarchState> states;
  states.emplace_back(prob, c);
  march(states, c);
  return std::move(states[0].traj);
}

void solve_parabolic_pair(const ParabolicProblem& a, const ParabolicProblem& b,
                          const StepControl& c, Trajectory& out_a,
                          Trajectory& out_b) {
  std::vector<MarchState> states;
  states.emplace_back(a, c);
  states.emplace_back(b, c);
  march(states, c);
  out_a = std::move(states[0].traj);
  out_b = std::move(states[1].traj);
}

std::vector<LossEvent> detect_boundary_loss(const Trajectory& traj,
                                            double tol) {
  if (tol <= 0.0) tol = 1e-6 * (1.0 + traj.sup_g);
  std::vector<LossEvent> events;
  for (size_t k = 0; k < traj.snapshots.size(); ++k) {
    for (size_t b = 0; b < traj.boundary_nodes.size(); ++b) {
      const int node = traj.boundary_nodes[b];
      const double gap = traj.boundary_values[k][b] - traj.snapshots[k][node];
      if (gap > tol) events.push_back({traj.times[k], node, gap});
    }
  }
  return events;
}

} // namespace vhj
