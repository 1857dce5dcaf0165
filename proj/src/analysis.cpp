#include "vhjlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vhjlab/discrete_ops.hpp"
#include "vhjlab/errors.hpp"

namespace vhj {

double beta_exponent(double p, double q) {
  if (!(p >= 2.0) || !(q > p))
    throw ConfigError("exponents must satisfy q > p >= 2 (got p=" +
                      std::to_string(p) + ", q=" + std::to_string(q) + ")");
  return (q - p) / (q - p + 1.0);
}

HolderReport holder_seminorm(const std::vector<double>& x,
                             const std::vector<double>& y,
                             const std::vector<double>& u, double beta) {
  if (u.size() != x.size()) throw ConfigError("field has the wrong node count");
  const bool planar = !y.empty();
  if (planar && y.size() != x.size())
    throw ConfigError("coordinate columns disagree in length");
  if (!(beta > 0.0) || !(beta <= 1.0))
    throw ConfigError("beta must lie in (0, 1]");
  HolderReport rep;
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dist = planar ? std::hypot(dx, y[i] - y[j])
                                 : std::abs(dx); // exact, flat fields tie cleanly
      const double ratio = std::abs(u[i] - u[j]) / std::pow(dist, beta);
      if (ratio > rep.seminorm) {
        rep.seminorm = ratio;
        rep.node_a = i;
        rep.node_b = j;
      }
    }
  return rep;
}

HolderReport holder_seminorm(const Grid& grid, const std::vector<double>& u,
                             double beta) {
  return holder_seminorm(grid.x, grid.dimension == 2 ? grid.y : std::vector<double>{},
                         u, beta);
}

SlopeReport asymptotic_slope(const Trajectory& traj, double window_fraction) {
  if (!(window_fraction > 0.0) || !(window_fraction < 1.0))
    throw ConfigError("window_fraction must lie in (0, 1)");
  if (traj.times.empty()) throw ConfigError("trajectory is empty");

  const double t_end = traj.times.back();
  const double t_start = t_end * (1.0 - window_fraction) - 1e-12;
  const std::vector<double> means = traj.snapshot_mean();

  std::vector<double> ts, ms;
  std::vector<size_t> idx;
  for (size_t k = 0; k < traj.times.size(); ++k)
    if (traj.times[k] >= t_start) {
      ts.push_back(traj.times[k]);
      ms.push_back(means[k]);
      idx.push_back(k);
    }
  if (ts.size() < 3)
    throw SolverError(SolverError::Kind::InsufficientSamples,
                      "only " + std::to_string(ts.size()) +
                          " snapshots in the slope window; need 3");

  double st = 0, sm = 0;
  for (size_t k = 0; k < ts.size(); ++k) {
    st += ts[k];
    sm += ms[k];
  }
  st /= ts.size();
  sm /= ts.size();
  double num = 0, den = 0;
  for (size_t k = 0; k < ts.size(); ++k) {
    num += (ts[k] - st) * (ms[k] - sm);
    den += (ts[k] - st) * (ts[k] - st);
  }

  SlopeReport rep;
  rep.samples = static_cast<int>(ts.size());
  rep.slope = num / den;
  rep.intercept = sm - rep.slope * (st - ts.front());
  for (size_t k : idx)
    for (double v : traj.snapshots[k])
      rep.max_mean_deviation =
          std::max(rep.max_mean_deviation, std::abs(v - means[k]));
  return rep;
}

ComparisonReport comparison_harness(const ParabolicProblem& lower,
                                    const ParabolicProblem& upper,
                                    const StepControl& c) {
  Trajectory a, b;
  solve_parabolic_pair(lower, upper, c, a, b);
  ComparisonReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < a.snapshots.size(); ++k)
    for (size_t i = 0; i < a.snapshots[k].size(); ++i) {
      const double gap = b.snapshots[k][i] - a.snapshots[k][i];
      rep.max_violation = std::max(rep.max_violation, -gap);
      rep.max_gap = std::max(rep.max_gap, std::abs(gap));
      rep.min_gap = std::min(rep.min_gap, gap);
    }
  rep.max_violation = std::max(rep.max_violation, 0.0);
  return rep;
}

double far_field_supersolution_margin(const Grid& grid, double p, double q,
                                      double f_norm,
                                      const std::array<double, 2>& xbar) {
  if (!(p >= 2.0) || !(q > p))
    throw ConfigError("exponents must satisfy q > p >= 2");
  if (f_norm < 0.0) throw ConfigError("f_norm must be nonnegative");

  const double needed =
      std::max(1.0, std::pow(f_norm + p - 1.0, 1.0 / (q - p + 2.0)));
  double margin = std::numeric_limits<double>::infinity();
  const int dim = grid.dimension;
  for (int i = 0; i < grid.node_count(); ++i) {
    const double dx = grid.x[i] - xbar[0];
    const double dy = dim == 2 ? grid.y[i] - xbar[1] : 0.0;
    const double dist = std::sqrt(dx * dx + dy * dy);
    if (dist < needed)
      throw ConfigError("far point sits closer than " +
                        std::to_string(needed) + " to the domain");
    const double m = -std::pow(2.0, p - 1.0) * (dim + p - 2.0) *
                         magnitude_power(dist, p - 2.0) +
                     magnitude_power(2.0 * dist, q) - f_norm;
    margin = std::min(margin, m);
  }
  return margin;
}

} // namespace vhj
