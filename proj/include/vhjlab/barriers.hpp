#pragma once

#include <array>
#include <vector>

#include "vhjlab/domain.hpp"
#include "vhjlab/parabolic.hpp"

namespace vhj {

// C^2 nondecreasing concave flattener: identity on [0, 1/2], constant 5/8
// from 3/4 on, quartic blend in between.
struct Smoother {
  static double value(double s);
  static double d1(double s);
  static double d2(double s);
  static constexpr double plateau() { return 0.625; }
};

struct BarrierParams {
  double p = 2.0;
  double q = 3.0;
  double beta = 0.5;  // (q - p) / (q - p + 1)
  double c1 = 1.0;    // radial growth coefficient of the unit-ball barrier
  double c2 = 1.0;    // boundary-hugging coefficient
  double m1 = 1.0;    // collar supersolution gradient scale
  double m2 = 1.0;    // zeroth-order supersolution level
  double delta = 0.0; // collar width the constants were calibrated for
  double target_c = 0.0; // source bound certified by (c1, c2)
};

struct W1Eval {
  double value = 0.0;
  std::array<double, 2> gradient{};
  std::array<std::array<double, 2>, 2> hessian{};
};

// Unit-ball boundary barrier
//   w1(x) = (c1/beta) |x|^beta + (c2/beta) (d(0)^beta - d(x)^beta),
//   d(x) = h(1 - |x|)
// evaluated with its radial derivative structure. Requires 0 < |x| <= 1.
W1Eval eval_w1(const std::array<double, 2>& x, int dim,
               const BarrierParams& par);

// Rescaled barrier w_r(x) = r^beta w1(x/r) for 0 < r <= 1, 0 < |x| <= r.
double scale_wr(double r, const std::array<double, 2>& x, int dim,
                const BarrierParams& par);

struct H2Report {
  double min_margin = 0.0;
  std::array<double, 2> worst_point{};
  double worst_radius = 0.0;
  int samples = 0;
};

// Samples the interior-barrier inequality
//   -(p-1) |Dw1|^(p-2) (sum of positive Hessian eigenvalues) + |Dw1|^q - C >= 0
// over log-spaced radii (and a ring of angles in 2D) and reports the minimum
// margin.
H2Report verify_H2(const BarrierParams& par, double c_bound, int sample_count,
                   int dim);

struct DomainNorms {
  int dimension = 1;
  double hess_norm = 0.0;    // max Frobenius norm of the smoothed D2d
  double collar_width = 0.0; // max distance over collar nodes (>= delta)
  double d_min_core = 0.0;   // min distance over core nodes
  double d_max = 0.0;        // max distance over nodes
  double f_norm = 0.0;       // sup |f| over nodes (0 when f not supplied)
  // Set when the discrete collar boundary sits more than 1% away from the
  // nominal width delta, i.e. the discrete norms may drift from their
  // continuum counterparts.
  bool continuum_gap_flag = false;
};

// Norms over the discrete node set. The interval keeps its exact piecewise
// linear distance (the midpoint kink is concave, hence harmless for
// supersolutions, and D2d = 0 elsewhere); the disc uses the flattened
// distance R h(dist/R) whose Hessian stays bounded through the center.
DomainNorms compute_domain_norms(const Grid& grid, double delta,
                                 const std::vector<double>* f_values);

// Calibrates (m1, m2, c1, c2) so that
//   - m1 satisfies the collar inequality
//       m1^(q-p+1) >= (p-1)(1-beta) + (p-2+sqrt(N)) w ||D2d||
//                     + max(lambda,1) w^(beta(2-p)+p) / beta
//     with w the measured collar width (>= delta, so every collar node is
//     covered), then m1 is clamped to at least 1,
//   - m2 dominates the core residual of the matched supersolution and 2||f||,
//   - (c1, c2) pass verify_H2 for C = max(1, ||f||) via doubling search.
// Throws SolverError::Kind::SearchExhausted if no (c1, c2) is found within
// 60 doublings.
BarrierParams auto_constants(double p, double q, double delta,
                             const DomainNorms& norms, double lambda);

// Pointwise data of the distance-like weight used by the global barrier.
struct DistanceSample {
  double d = 0.0;        // smoothed distance value
  double grad_mag = 0.0; // |Dd|
  double laplacian = 0.0;
  double quad = 0.0;     // <D2d Dd/|Dd|, Dd/|Dd|>, 0 when Dd = 0
  double frobenius = 0.0;
};

DistanceSample sample_distance(const Grid& grid, int node);

struct UbarReport {
  double min_margin_collar = 0.0;
  double min_margin_core = 0.0;
  int argmin_collar = -1;
  int argmin_core = -1;
};

// Evaluates the supersolution margin of
//   ubar = -(m1/beta) d^beta + m2 / lambda
// at every interior node:
//   m1^(p-1) |Dd|^(p-2) d^(q(beta-1)) B - lambda (m1/beta) d^beta + m2 - f
// with B = (p-1)(beta-1)|Dd|^2 + d lap(d) + (p-2) d quad + m1^(q-p+1)
// |Dd|^(q-p+2). Margins must come out nonnegative when the params came from
// auto_constants on the same grid.
UbarReport verify_ubar(const Grid& grid, double lambda,
                       const std::vector<double>& f_values,
                       const BarrierParams& par);

} // namespace vhj
