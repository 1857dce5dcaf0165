#pragma once

#include <vector>

#include "vhjlab/barriers.hpp"
#include "vhjlab/stationary.hpp"

namespace vhj {

struct ErgodicOptions {
  StepControl control;
  double tol = 0.0; // per-solve threshold, see solve_stationary
  int anchor = -1;  // normalization node; -1 selects argmax of the distance
  // Cross-check each state-constraint solve against the datum-free scheme.
  bool cross_check = true;
  // Collar width for the constant calibration; <= 0 uses the grid default.
  double delta = 0.0;
};

struct ErgodicLevel {
  double lambda = 0.0;
  double c_estimate = 0.0;      // -lambda u_lambda(anchor)
  double cross_check_gap = 0.0; // 0 when the cross-check was skipped
  double residual = 0.0;
  long long steps = 0;
  double big_datum = 0.0;
  double constraint_slack = 0.0;
};

struct ErgodicResult {
  std::vector<ErgodicLevel> levels;
  std::vector<std::vector<double>> profiles; // w_k = u_k - u_k(anchor)
  int anchor = 0;
  double c = 0.0;                  // last c_estimate
  std::vector<double> profile;     // last normalized profile
  bool converged = false;          // |c_K - c_{K-1}| < 1e-2 (1 + |c_K|)
  double band = 0.0;               // max(||f||, m2): every |c_k| must fit
  double band_excess = 0.0;        // max over k of (|c_k| - band)+
  BarrierParams params;            // constants used for the large datum
};

// Default discount ladder 2^-1, ..., 2^-10.
std::vector<double> default_lambda_sequence();

// Vanishing-discount sweep: for each lambda the state-constraint problem is
// solved (warm-started along the ladder), the ergodic constant is read off at
// the anchor node, and the normalized profile is kept.
ErgodicResult ergodic_solve(GridPtr grid, double p, double q, const SpaceFn& f,
                            const std::vector<double>& lambdas,
                            const ErgodicOptions& opt);

struct ShiftCheck {
  double c_error = 0.0;      // |c(f + s) - (c(f) - s)|
  double profile_gap = 0.0;  // max nodewise gap of the normalized profiles
};

// Adding a constant s to the source shifts the ergodic constant by -s and
// leaves the normalized profile unchanged; this measures both statements.
ShiftCheck shift_check(const ErgodicResult& base, const ErgodicResult& shifted,
                       double s);

} // namespace vhj
