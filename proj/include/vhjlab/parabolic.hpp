#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "vhjlab/discrete_ops.hpp"
#include "vhjlab/domain.hpp"

namespace vhj {

// Space-time scalar data: callables receive (x, y, t); y is 0 in 1D.
using SpaceTimeFn = std::function<double(double, double, double)>;
using SpaceFn = std::function<double(double, double)>;

struct ParabolicProblem {
  GridPtr grid;
  double p = 2.0;
  double q = 3.0;
  double horizon = 1.0;
  SpaceTimeFn source;   // f
  SpaceTimeFn boundary; // g, sampled at boundary nodes
  SpaceFn initial;      // u0
  // When false the corresponding data is sampled once and cached.
  bool source_time_dependent = true;
};

struct StepControl {
  double cfl_safety = 0.5; // in (0, 1]
  // Cap on the gradient entering the step bound; keeps dt positive when the
  // solution steepens. Non-positive means: choose 8*(1+data scale)/sqrt(h)
  // at solve start.
  double gradient_cap = 0.0;
  double dt_floor = 1e-12;
  int snapshot_count = 11;
  long long max_steps = 2'000'000'000LL;
};

// Explicit step bound:
//   dt = safety * min(h^2 / (2 dim (p-1) G^(p-2) + e0), h / (q G^(q-1) + e0))
// with G = min(max one-sided gradient, cap) and e0 = 1e-12, floored at
// dt_floor.
double cfl_dt(const Field& field, double p, double q, const StepControl& c);

// Boundary rule: the new boundary value never exceeds the datum.
inline double boundary_update(double candidate_pde_value, double g_value) {
  return candidate_pde_value < g_value ? candidate_pde_value : g_value;
}

struct SnapshotDiag {
  double max_gradient = 0.0; // max upwind gradient seen in the interval
  double min_dt = std::numeric_limits<double>::infinity();
  double max_dt = 0.0;
  long long steps = 0;
  int detached_boundary_nodes = 0; // at the snapshot, gap > detach epsilon
};

struct Trajectory {
  GridPtr grid;
  std::vector<double> times;
  std::vector<std::vector<double>> snapshots;
  // Datum values at boundary nodes (in boundary_nodes order) per snapshot.
  std::vector<int> boundary_nodes;
  std::vector<std::vector<double>> boundary_values;
  std::vector<SnapshotDiag> interval_diag; // one entry per marched interval

  double max_boundary_excess = 0.0; // max over steps of (u - g)+ at boundary
  double sup_f = 0.0;               // max |f| sampled during the march
  double sup_g = 0.0;               // max |g| sampled during the march
  double sup_u0 = 0.0;
  double min_dt = std::numeric_limits<double>::infinity();
  double max_gradient = 0.0;
  long long total_steps = 0;

  std::vector<double> snapshot_mean() const;
};

// Forward Euler march of u_t + spatial_residual = 0 with the generalized
// boundary rule u_b = min(g, candidate). Snapshots land exactly on the
// requested output times; the first snapshot is the initial data, untouched.
Trajectory solve_parabolic(const ParabolicProblem& prob, const StepControl& c);

// Marches two problems posed on the same grid with a shared per-step dt
// (the smaller of the two step bounds). Both trajectories see identical
// snapshot times, which makes nodewise snapshot comparisons meaningful at
// roundoff scale.
void solve_parabolic_pair(const ParabolicProblem& a, const ParabolicProblem& b,
                          const StepControl& c, Trajectory& out_a,
                          Trajectory& out_b);

struct LossEvent {
  double time;
  int node;
  double gap; // g - u > tol
};

// Boundary nodes and snapshot times where the solution detaches from the
// datum by more than tol. tol <= 0 selects 1e-6 * (1 + sup |g|).
std::vector<LossEvent> detect_boundary_loss(const Trajectory& traj,
                                            double tol);

} // namespace vhj
