#include "vhjlab/supconv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vhjlab/errors.hpp"

namespace vhj {

namespace {

void validate_series(const TimeSeriesField& s) {
  if (s.times.size() < 2) throw ConfigError("series needs at least two times");
  if (s.values.size() != s.times.size())
    throw ConfigError("times and values disagree in length");
  const size_t n = s.values[0].size();
  for (size_t k = 0; k < s.times.size(); ++k) {
    if (!std::isfinite(s.times[k]))
      throw ConfigError("series times must be finite");
    if (k > 0 && !(s.times[k] > s.times[k - 1]))
      throw ConfigError("series times must be strictly increasing");
    if (s.values[k].size() != n)
      throw ConfigError("series rows must have equal node counts");
    for (double v : s.values[k])
      if (!std::isfinite(v)) throw ConfigError("series values must be finite");
  }
}

double max_dt(const TimeSeriesField& s) {
  double out = 0.0;
  for (size_t k = 1; k < s.times.size(); ++k)
    out = std::max(out, s.times[k] - s.times[k - 1]);
  return out;
}

} // namespace

double TimeSeriesField::sup_norm() const {
  double out = 0.0;
  for (const std::vector<double>& row : values)
    for (double v : row) out = std::max(out, std::abs(v));
  return out;
}

double TimeSeriesField::k_bound() const { return std::sqrt(2.0 * sup_norm()); }

TimeSeriesField from_trajectory(const Trajectory& traj) {
  TimeSeriesField out;
  out.times = traj.times;
  out.values = traj.snapshots;
  return out;
}

int argmax_shift(const TimeSeriesField& series, int node, int t_idx,
                 double alpha) {
  const double tt = series.times[t_idx];
  int best = t_idx;
  double best_val = series.values[t_idx][node]; // s = t costs nothing
  double best_off = 0.0;
  for (size_t s = 0; s < series.times.size(); ++s) {
    const double off = std::abs(series.times[s] - tt);
    const double val =
        series.values[s][node] - (off * off) / (alpha * alpha);
    if (val > best_val || (val == best_val && off < best_off)) {
      best = static_cast<int>(s);
      best_val = val;
      best_off = off;
    }
  }
  return best;
}

TimeSeriesField sup_convolve(const TimeSeriesField& series, double alpha) {
  validate_series(series);
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ConfigError("alpha must lie in (0, 1]");

  const double span = series.times.back() - series.times.front();
  const double margin = 2.0 * series.k_bound() * alpha;
  if (span <= margin)
    throw SolverError(SolverError::Kind::EmptyWindow,
                      "series spans " + std::to_string(span) +
                          " but the regularization needs more than " +
                          std::to_string(margin));

  const size_t nt = series.times.size();
  const size_t nx = series.values[0].size();
  TimeSeriesField out;
  out.times = series.times;
  out.values.assign(nt, std::vector<double>(nx, 0.0));
  for (size_t t = 0; t < nt; ++t)
    for (size_t x = 0; x < nx; ++x) {
      const int s = argmax_shift(series, static_cast<int>(x),
                                 static_cast<int>(t), alpha);
      const double off = series.times[s] - series.times[t];
      out.values[t][x] = series.values[s][x] - (off * off) / (alpha * alpha);
    }
  return out;
}

LipschitzReport check_time_lipschitz(const TimeSeriesField& regularized,
                                     double alpha) {
  validate_series(regularized);
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  LipschitzReport rep;
  for (size_t k = 1; k < regularized.times.size(); ++k) {
    const double dt = regularized.times[k] - regularized.times[k - 1];
    for (size_t x = 0; x < regularized.values[k].size(); ++x) {
      const double slope =
          std::abs(regularized.values[k][x] - regularized.values[k - 1][x]) /
          dt;
      rep.max_slope = std::max(rep.max_slope, slope);
    }
  }
  rep.bound = 2.0 * regularized.k_bound() / alpha;
  rep.slack = 10.0 * max_dt(regularized) / (alpha * alpha);
  rep.pass = rep.max_slope <= rep.bound + rep.slack;
  return rep;
}

WindowReport check_maximizer_window(const TimeSeriesField& original,
                                    double alpha) {
  validate_series(original);
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  WindowReport rep;
  for (size_t t = 0; t < original.times.size(); ++t)
    for (size_t x = 0; x < original.values[0].size(); ++x) {
      const int s = argmax_shift(original, static_cast<int>(x),
                                 static_cast<int>(t), alpha);
      rep.max_offset = std::max(
          rep.max_offset, std::abs(original.times[s] - original.times[t]));
    }
  rep.bound = original.k_bound() * alpha + max_dt(original);
  rep.pass = rep.max_offset < rep.bound;
  return rep;
}

} // namespace vhj
