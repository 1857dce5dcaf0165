#pragma once

// Internal explicit-step kernel shared by the time-dependent and pseudo-time
// solvers. Not installed.

#include <cmath>
#include <vector>

#include "vhjlab/discrete_ops.hpp"
#include "vhjlab/domain.hpp"

namespace vhj::detail {

struct StepStats {
  double max_abs_residual = 0.0; // max |u_t| over rows, pre-roundoff
  double sum_residual = 0.0;     // sum of u_t sign-flipped residuals (PDE rows)
  double max_abs_value = 0.0;
  bool datum_active = false; // some boundary row was clipped by the datum
  bool finite = true;
  bool changed = false;  // some node moved bitwise this step
  bool repeat2 = true;   // every node returned to its value two steps ago
};

// One forward-Euler step of u_t + lambda u + spatial_residual = 0. Boundary
// rows march u_t + lambda u + H(inward gradient) = f with no diffusion term:
// no curvature is realizable one-sidedly, and borrowing the neighbor's second
// difference couples the boundary node to itself with weight 1 + dt/h^2 (its
// own value enters the borrowed curvature with the amplifying sign), which
// ratchets attached boundaries away from the datum. The upwind Hamiltonian
// keeps the rows monotone. When datum values are supplied the boundary
// result is min(datum, candidate).
class Kernel {
public:
  Kernel(GridPtr grid, double p, double q, double lambda)
      : grid_(std::move(grid)), p_(p), q_(q), lambda_(lambda) {
    const int n = grid_->node_count();
    next_.resize(n);
    if (grid_->dimension == 1) {
      diffs_.resize(n - 1);
      flux_.resize(n - 1);
    }
    boundary_nodes_ = grid_->boundary_nodes();
  }

  const std::vector<int>& boundary_nodes() const { return boundary_nodes_; }

  // Fills the difference caches and returns the max one-sided gradient.
  double prepare(const std::vector<double>& u) {
    if (grid_->dimension == 1) {
      const double h = grid_->spacing;
      const int m = static_cast<int>(diffs_.size());
      double gmax = 0.0;
      for (int i = 0; i < m; ++i) {
        const double d = (u[i + 1] - u[i]) / h;
        diffs_[i] = d;
        flux_[i] = signed_power(d, p_ - 1.0);
        gmax = std::max(gmax, std::abs(d));
      }
      return gmax;
    }
    return max_onesided_gradient(*grid_, u);
  }

  // datum: values at boundary_nodes() order, or nullptr for the pure
  // one-sided scheme. prepare() must have been called on the same u.
  StepStats step(std::vector<double>& u, double dt,
                 const std::vector<double>& f, const std::vector<double>* datum) {
    StepStats st;
    if (grid_->dimension == 1)
      step_1d(u, dt, f, datum, st);
    else
      step_generic(u, dt, f, datum, st);
    u.swap(next_);
    return st;
  }

private:
  void row(StepStats& st, double ui, double residual, double dt, double g,
           bool has_datum, int i) {
    double value = ui - dt * residual;
    if (has_datum && g < value) {
      value = g;
      st.datum_active = true;
      const double applied = (ui - value) / dt;
      st.max_abs_residual = std::max(st.max_abs_residual, std::abs(applied));
    } else {
      st.max_abs_residual = std::max(st.max_abs_residual, std::abs(residual));
      st.sum_residual += residual;
    }
    if (!std::isfinite(value)) st.finite = false;
    st.max_abs_value = std::max(st.max_abs_value, std::abs(value));
    // next_ still holds the field from two steps back at this point, which
    // is what makes the period-two comparison free.
    if (value != ui) st.changed = true;
    if (value != next_[i]) st.repeat2 = false;
    next_[i] = value;
  }

  void step_1d(const std::vector<double>& u, double dt,
               const std::vector<double>& f, const std::vector<double>* datum,
               StepStats& st) {
    const int n = static_cast<int>(u.size()) - 1;
    const double h = grid_->spacing;

    for (int i = 1; i < n; ++i) {
      const double dm = diffs_[i - 1];
      const double dp = diffs_[i];
      const double up = std::max(std::max(dm, 0.0), std::max(-dp, 0.0));
      const double res = lambda_ * u[i] - (flux_[i] - flux_[i - 1]) / h +
                         magnitude_power(up, q_) - f[i];
      row(st, u[i], res, dt, 0.0, false, i);
    }

    // Boundary rows: inward one-sided gradient, upwind Hamiltonian branch
    // only (profiles rising into the domain contribute nothing), and no
    // diffusion term; see the class comment.
    {
      const double res = lambda_ * u[0] +
                         magnitude_power(std::max(-diffs_[0], 0.0), q_) - f[0];
      row(st, u[0], res, dt, datum ? (*datum)[0] : 0.0, datum != nullptr, 0);
    }
    {
      const double res =
          lambda_ * u[n] +
          magnitude_power(std::max(diffs_[n - 1], 0.0), q_) - f[n];
      row(st, u[n], res, dt, datum ? (*datum)[1] : 0.0, datum != nullptr, n);
    }
  }

  void step_generic(const std::vector<double>& u, double dt,
                    const std::vector<double>& f,
                    const std::vector<double>* datum, StepStats& st) {
    int b = 0;
    for (int i = 0; i < grid_->node_count(); ++i) {
      if (grid_->is_boundary(i)) {
        const StencilSample s = sample_stencil(*grid_, u, i);
        const double res = lambda_ * u[i] + hamiltonian(s, q_) - f[i];
        row(st, u[i], res, dt, datum ? (*datum)[b] : 0.0, datum != nullptr, i);
        ++b;
      } else {
        const double res =
            lambda_ * u[i] + spatial_residual(*grid_, u, i, p_, q_, f[i]);
        row(st, u[i], res, dt, 0.0, false, i);
      }
    }
  }

  GridPtr grid_;
  double p_, q_, lambda_;
  std::vector<double> diffs_, flux_, next_;
  std::vector<int> boundary_nodes_;
};

inline double step_bound(double h, int dim, double p, double q, double ghat,
                         double safety) {
  const double e0 = 1e-12;
  const double bd =
      h * h / (2.0 * dim * (p - 1.0) * magnitude_power(ghat, p - 2.0) + e0);
  const double bg = h / (q * magnitude_power(ghat, q - 1.0) + e0);
  return safety * std::min(bd, bg);
}

} // namespace vhj::detail
