#pragma once

#include <vector>

#include "vhjlab/parabolic.hpp"

namespace vhj {

struct TimeSeriesField {
  std::vector<double> times;                // strictly increasing
  std::vector<std::vector<double>> values;  // values[k][node] at times[k]

  double sup_norm() const;
  // Parabolic regularization scale K = sqrt(2 sup |u|).
  double k_bound() const;
};

TimeSeriesField from_trajectory(const Trajectory& traj);

// Sup-convolution in time only:
//   u^alpha(x, t) = max_s { u(x, s) - (t - s)^2 / alpha^2 }
// over the stored snapshot times, ties broken toward s = t (smaller |t - s|,
// then the earlier snapshot). Throws SolverError::Kind::EmptyWindow when the
// series spans no more than 2 K alpha, i.e. no time is safely interior.
TimeSeriesField sup_convolve(const TimeSeriesField& series, double alpha);

// Index of the maximizing snapshot for node x at time index t_idx.
int argmax_shift(const TimeSeriesField& series, int node, int t_idx,
                 double alpha);

struct LipschitzReport {
  double max_slope = 0.0; // max |u(x, t_{k+1}) - u(x, t_k)| / dt
  double bound = 0.0;     // 2 K / alpha with K from the tested series
  double slack = 0.0;     // 10 max_dt / alpha^2 discretization allowance
  bool pass = false;
};

// Adjacent-snapshot time slopes of a sup-convolved series against the
// regularization bound.
LipschitzReport check_time_lipschitz(const TimeSeriesField& regularized,
                                     double alpha);

struct WindowReport {
  double max_offset = 0.0; // max |times[s*] - times[t]| over nodes and times
  double bound = 0.0;      // K alpha + max_dt
  bool pass = false;
};

// Maximizers in the sup-convolution of the original series must sit within
// K alpha of the target time (plus one mesh width of slack).
WindowReport check_maximizer_window(const TimeSeriesField& original,
                                    double alpha);

} // namespace vhj
