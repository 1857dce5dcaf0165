#pragma once

#include <optional>
#include <vector>

#include "vhjlab/parabolic.hpp"

namespace vhj {

struct StationaryProblem {
  GridPtr grid;
  double p = 2.0;
  double q = 3.0;
  double lambda = 1.0; // zeroth-order coefficient, must be positive
  SpaceFn source;      // f
  SpaceFn boundary;    // datum; ignored when use_datum is false
  bool use_datum = true;
};

struct StationaryOptions {
  StepControl control; // snapshot_count is ignored here
  // Convergence threshold on max |u_t|. Non-positive selects
  // 1e-8 * (1 + sup |f|).
  double tol = 0.0;
  std::optional<std::vector<double>> init; // warm start; defaults to zeros
  // Applies the exact constant-mode correction s = -mean(residual)/lambda
  // every deflate_interval steps. The residual of this scheme is affine in
  // constant shifts (only the lambda term sees them), so the correction
  // removes the slowest error mode without changing the fixed point. It is
  // suspended permanently the first time a datum row clips.
  bool deflate = false;
  int deflate_interval = 64;
};

struct StationaryResult {
  Field u;
  long long steps = 0;
  double residual = 0.0; // max |u_t| at the accepted iterate
  double tol = 0.0;      // threshold actually used
  bool datum_ever_active = false;
  long long deflations = 0;
};

// Marches u_t + lambda u + spatial_residual = 0 to steady state. Stops when
// the residual drops below tol, or earlier at the scheme's floating-point
// fixed point: once a step leaves every node bitwise unchanged (or the
// iterate enters a two-step cycle, or the best residual stops improving for
// a long window), no further progress is possible in double precision and
// the iterate is accepted as is. residual always reports the final value, so
// a plateau exit is visible as residual >= tol. Tolerances below the machine
// floor of the explicit march (roughly ulp(u) / dt) are therefore served with
// the closest attainable iterate instead of spinning forever.
StationaryResult solve_stationary(const StationaryProblem& prob,
                                  const StationaryOptions& opt);

struct StateConstraintResult {
  Field u;
  double big_datum = 0.0;      // R = 2 M2 / lambda
  double max_value = 0.0;      // max u over all nodes
  double constraint_slack = 0.0; // (R - h) - max u, must stay positive
  double cross_check_gap = 0.0;  // vs. the datum-free scheme, when run
  long long steps = 0;
  double residual = 0.0;
};

struct StateConstraintOptions {
  StationaryOptions base;
  // Re-solves with the pure one-sided boundary scheme (no datum) from a cold
  // start and reports the max nodewise gap. The two schemes share every
  // non-clipped row, so the gap should sit at solver-tolerance scale.
  bool cross_check = true;
};

// State-constraint solution via the generalized problem with the large
// constant datum R = 2 M2 / lambda. Throws SolverError::Kind::ConstraintActive
// if the solution climbs within one grid spacing of R anywhere.
StateConstraintResult solve_state_constraint(GridPtr grid, double p, double q,
                                             double lambda, const SpaceFn& f,
                                             double m2,
                                             const StateConstraintOptions& opt);

} // namespace vhj
