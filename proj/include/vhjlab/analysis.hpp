#pragma once

#include <array>
#include <vector>

#include "vhjlab/parabolic.hpp"

namespace vhj {

// Critical regularity exponent beta = (q - p) / (q - p + 1), in (0, 1).
double beta_exponent(double p, double q);

struct HolderReport {
  double seminorm = 0.0; // max |u_i - u_j| / |x_i - x_j|^beta over pairs
  int node_a = -1;
  int node_b = -1;
};

// Exact discrete Holder seminorm over all node pairs; ties keep the
// lexicographically first pair. y may be empty for 1D samples.
HolderReport holder_seminorm(const std::vector<double>& x,
                             const std::vector<double>& y,
                             const std::vector<double>& u, double beta);
HolderReport holder_seminorm(const Grid& grid, const std::vector<double>& u,
                             double beta);

struct SlopeReport {
  double slope = 0.0;     // least-squares slope of t -> mean_x u(x, t)
  double intercept = 0.0; // value of the fit at the first window time
  int samples = 0;
  // How far the profile sits from spatially flat inside the window.
  double max_mean_deviation = 0.0;
};

// Fits the spatial-mean decay over the trailing window of a trajectory.
// Throws SolverError::Kind::InsufficientSamples when fewer than three
// snapshots land in the window.
SlopeReport asymptotic_slope(const Trajectory& traj, double window_fraction);

struct ComparisonReport {
  double max_violation = 0.0; // max over snapshots/nodes of (lower - upper)+
  double max_gap = 0.0;       // max |lower - upper|
  double min_gap = 0.0;       // min (upper - lower)
};

// Marches the two problems in lockstep (shared dt sequence, identical
// snapshot times) and reports how the ordering held up.
ComparisonReport comparison_harness(const ParabolicProblem& lower,
                                    const ParabolicProblem& upper,
                                    const StepControl& c);

// Margin of the far-point supersolution phi(x) = |x - xbar|^2 + constant:
//   min over nodes of [ -2^(p-1) (N + p - 2) D^(p-2) + (2 D)^q - f_norm ],
// D = |x - xbar|. Requires dist(xbar, domain) >= max(1,
// (f_norm + p - 1)^(1 / (q - p + 2))), which keeps every term in range.
double far_field_supersolution_margin(const Grid& grid, double p, double q,
                                      double f_norm,
                                      const std::array<double, 2>& xbar);

} // namespace vhj
