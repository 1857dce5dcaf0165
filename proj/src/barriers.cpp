#include "vhjlab/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vhjlab/discrete_ops.hpp"
#include "vhjlab/errors.hpp"

namespace vhj {

double Smoother::value(double s) {
  if (s <= 0.5) return s;
  if (s >= 0.75) return 0.625;
  const double t = 4.0 * s - 2.0;
  return 0.5 + 0.25 * (t - t * t * t + 0.5 * t * t * t * t);
}

double Smoother::d1(double s) {
  if (s <= 0.5) return 1.0;
  if (s >= 0.75) return 0.0;
  const double t = 4.0 * s - 2.0;
  return 1.0 - 3.0 * t * t + 2.0 * t * t * t;
}

double Smoother::d2(double s) {
  if (s <= 0.5 || s >= 0.75) return 0.0;
  const double t = 4.0 * s - 2.0;
  return -24.0 * t * (1.0 - t);
}

namespace {

double radius_of(const std::array<double, 2>& x, int dim) {
  return dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
}

void validate_beta(const BarrierParams& par) {
  if (!(par.p >= 2.0) || !(par.q > par.p))
    throw ConfigError("exponents must satisfy q > p >= 2");
  const double beta = (par.q - par.p) / (par.q - par.p + 1.0);
  if (std::abs(par.beta - beta) > 1e-12)
    throw ConfigError("beta is inconsistent with (p, q)");
}

} // namespace

W1Eval eval_w1(const std::array<double, 2>& x, int dim,
               const BarrierParams& par) {
  validate_beta(par);
  if (dim != 1 && dim != 2) throw ConfigError("dimension must be 1 or 2");
  const double r = radius_of(x, dim);
  if (!(r > 0.0) || r > 1.0 + 1e-12)
    throw ConfigError("barrier evaluation needs 0 < |x| <= 1");

  const double beta = par.beta;
  const double s = 1.0 - r;
  const double d = Smoother::value(s);
  const double hp = Smoother::d1(s);
  const double hpp = Smoother::d2(s);
  const double d0 = Smoother::plateau(); // d at the origin

  W1Eval ev;
  ev.value = (par.c1 / beta) * std::pow(r, beta) +
             (par.c2 / beta) * (std::pow(d0, beta) - std::pow(d, beta));

  // Radial structure: w1 = A(r) with
  //   A'(r)  = c1 r^(beta-1) + c2 d^(beta-1) h'(1-r)
  //   A''(r) = c1 (beta-1) r^(beta-2)
  //            - c2 (beta-1) d^(beta-2) h'^2 - c2 d^(beta-1) h''
  // so D2w1 = A'' rhat rhat^T + (A'/r) (I - rhat rhat^T).
  const double dpow1 = magnitude_power(d, beta - 1.0); // +inf at d = 0 is real
  const double a1 = par.c1 * magnitude_power(r, beta - 1.0) + par.c2 * dpow1 * hp;
  const double a2 = par.c1 * (beta - 1.0) * magnitude_power(r, beta - 2.0) -
                    par.c2 * (beta - 1.0) * magnitude_power(d, beta - 2.0) * hp * hp -
                    par.c2 * dpow1 * hpp;

  if (dim == 1) {
    const double sgn = x[0] >= 0.0 ? 1.0 : -1.0;
    ev.gradient = {a1 * sgn, 0.0};
    ev.hessian[0][0] = a2;
    return ev;
  }

  const std::array<double, 2> rh = {x[0] / r, x[1] / r};
  ev.gradient = {a1 * rh[0], a1 * rh[1]};
  const double tang = a1 / r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double outer = rh[i] * rh[j];
      ev.hessian[i][j] = a2 * outer + tang * ((i == j ? 1.0 : 0.0) - outer);
    }
  return ev;
}

double scale_wr(double r, const std::array<double, 2>& x, int dim,
                const BarrierParams& par) {
  if (!(r > 0.0) || r > 1.0)
    throw ConfigError("scaling radius must lie in (0, 1]");
  const double xr = radius_of(x, dim);
  if (!(xr > 0.0) || xr > r * (1.0 + 1e-12))
    throw ConfigError("point must satisfy 0 < |x| <= r");
  const std::array<double, 2> xs = {x[0] / r, x[1] / r};
  return std::pow(r, par.beta) * eval_w1(xs, dim, par).value;
}

H2Report verify_H2(const BarrierParams& par, double c_bound, int sample_count,
                   int dim) {
  validate_beta(par);
  if (sample_count < 1000)
    throw ConfigError("sample_count must be at least 1000");
  const int na = dim == 1 ? 1 : 8;
  const int nr = std::max(2, sample_count / na);

  H2Report rep;
  rep.min_margin = std::numeric_limits<double>::infinity();

  // r = 1 itself carries an infinite inward slope (margin +inf); stop just
  // short of it so every sample is finite.
  const double lo = std::log(1e-6), hi = std::log(1.0 - 1e-9);
  for (int ia = 0; ia < na; ++ia) {
    const double ang = ia * (1.61803398874989484 * M_PI); // no lattice bias
    for (int ir = 0; ir < nr; ++ir) {
      const double r = std::exp(lo + (hi - lo) * ir / (nr - 1));
      std::array<double, 2> x;
      if (dim == 1)
        x = {r, 0.0};
      else
        x = {r * std::cos(ang), r * std::sin(ang)};

      const W1Eval ev = eval_w1(x, dim, par);
      const double gmag = dim == 1 ? std::abs(ev.gradient[0])
                                   : std::hypot(ev.gradient[0], ev.gradient[1]);
      double sum_pos;
      if (dim == 1) {
        sum_pos = std::max(ev.hessian[0][0], 0.0);
      } else {
        const double a = ev.hessian[0][0], b = ev.hessian[0][1],
                     c = ev.hessian[1][1];
        const double mid = 0.5 * (a + c);
        const double rad = std::hypot(0.5 * (a - c), b);
        sum_pos = std::max(mid + rad, 0.0) + std::max(mid - rad, 0.0);
      }
      const double margin = -(par.p - 1.0) * magnitude_power(gmag, par.p - 2.0) *
                                sum_pos +
                            magnitude_power(gmag, par.q) - c_bound;
      ++rep.samples;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.worst_point = x;
        rep.worst_radius = r;
      }
    }
  }
  return rep;
}

DistanceSample sample_distance(const Grid& grid, int node) {
  DistanceSample out;
  if (grid.dimension == 1) {
    // Exact distance: |Dd| = 1, flat elsewhere; the midpoint kink is concave
    // and is assigned its one-sided values.
    out.d = grid.dist[node];
    out.grad_mag = 1.0;
    return out;
  }
  // Disc of radius R: flattened distance R h((R - |x|)/R). The plateau makes
  // the Hessian bounded through the center.
  const double radius = grid.diameter / 2.0;
  const double r = std::hypot(grid.x[node], grid.y[node]);
  const double s = (radius - r) / radius;
  const double hp = Smoother::d1(s);
  const double hpp = Smoother::d2(s);
  out.d = radius * Smoother::value(s);
  out.grad_mag = hp;
  const double curv = hpp / radius;
  const double tang = (r > 0.0 && hp > 0.0) ? hp / r : 0.0;
  out.laplacian = curv - tang;
  out.quad = hp > 0.0 ? curv : 0.0;
  out.frobenius = std::sqrt(curv * curv + tang * tang);
  return out;
}

DomainNorms compute_domain_norms(const Grid& grid, double delta,
                                 const std::vector<double>* f_values) {
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (f_values &&
      static_cast<int>(f_values->size()) != grid.node_count())
    throw ConfigError("f_values has the wrong node count");

  DomainNorms norms;
  norms.dimension = grid.dimension;
  norms.d_min_core = std::numeric_limits<double>::infinity();

  const double edge = delta + grid.spacing / 2.0;
  double collar_width = 0.0;
  int collar = 0, core = 0;
  for (int i = 0; i < grid.node_count(); ++i) {
    if (f_values)
      norms.f_norm = std::max(norms.f_norm, std::abs((*f_values)[i]));
    if (grid.is_boundary(i)) continue;
    const DistanceSample ds = sample_distance(grid, i);
    norms.hess_norm = std::max(norms.hess_norm, ds.frobenius);
    norms.d_max = std::max(norms.d_max, ds.d);
    if (grid.dist[i] <= edge) {
      ++collar;
      collar_width = std::max(collar_width, ds.d);
      if (ds.grad_mag < 1.0 - 1e-12)
        throw ConfigError("collar reaches into the flattened distance zone; "
                          "shrink delta or refine the grid");
    } else {
      ++core;
      norms.d_min_core = std::min(norms.d_min_core, ds.d);
    }
  }
  if (collar == 0 || core == 0)
    throw ConfigError("zone split left the collar or the core empty");
  norms.collar_width = collar_width;
  norms.continuum_gap_flag = std::abs(collar_width - delta) > 0.01 * delta;
  return norms;
}

BarrierParams auto_constants(double p, double q, double delta,
                             const DomainNorms& norms, double lambda) {
  if (!(p >= 2.0) || !(q > p))
    throw ConfigError("exponents must satisfy q > p >= 2");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (!(norms.d_min_core > 0.0) || !(norms.collar_width > 0.0))
    throw ConfigError("domain norms are incomplete");

  BarrierParams par;
  par.p = p;
  par.q = q;
  par.beta = (q - p) / (q - p + 1.0);
  par.delta = delta;

  const double beta = par.beta;
  const double rootN = std::sqrt(static_cast<double>(norms.dimension));
  const double lamf = std::max(lambda, 1.0);
  const double cw = norms.collar_width; // measured, >= nominal delta

  // Collar inequality, solved in closed form (the left side is a pure power
  // of m1, strictly increasing).
  const double rhs = (p - 1.0) * (1.0 - beta) +
                     (p - 2.0 + rootN) * cw * norms.hess_norm +
                     lamf * std::pow(cw, beta * (2.0 - p) + p) / beta;
  par.m1 = std::max(std::pow(rhs, 1.0 / (q - p + 1.0)), 1.0 + 1e-9);

  // Core residual of ubar = -(m1/beta) d^beta + m2/lambda, bounded nodewise
  // over the discrete core; the 1.01 keeps the verified margins strictly
  // positive.
  const double e1 = par.q * (beta - 1.0);
  const double e2 = (beta - 1.0) * (p - 1.0);
  const double core =
      std::pow(par.m1, p - 1.0) *
          ((p - 1.0) * (1.0 - beta) * std::pow(norms.d_min_core, e1) +
           (p - 2.0 + rootN) * norms.hess_norm * std::pow(norms.d_min_core, e2)) +
      lamf * (par.m1 / beta) * std::pow(norms.d_max, beta) + 3.0 * norms.f_norm;
  par.m2 = std::max(1.01 * core, 2.0 * norms.f_norm);

  par.target_c = std::max(1.0, norms.f_norm);
  for (int e2i = 0; e2i <= 60; ++e2i) {
    par.c2 = std::ldexp(1.0, e2i);
    for (int e1i = 0; e1i <= 60; ++e1i) {
      par.c1 = std::ldexp(1.0, e1i);
      const H2Report rep =
          verify_H2(par, par.target_c, 2000, norms.dimension);
      if (rep.min_margin > 0.0) return par;
    }
  }
  throw SolverError(SolverError::Kind::SearchExhausted,
                    "no barrier coefficients found within 60 doublings");
}

UbarReport verify_ubar(const Grid& grid, double lambda,
                       const std::vector<double>& f_values,
                       const BarrierParams& par) {
  validate_beta(par);
  if (static_cast<int>(f_values.size()) != grid.node_count())
    throw ConfigError("f_values has the wrong node count");
  if (!(par.delta > 0.0)) throw ConfigError("params carry no collar width");

  const double beta = par.beta;
  const double e1 = par.q * (beta - 1.0);
  const double edge = par.delta + grid.spacing / 2.0;

  UbarReport rep;
  rep.min_margin_collar = std::numeric_limits<double>::infinity();
  rep.min_margin_core = std::numeric_limits<double>::infinity();

  for (int i = 0; i < grid.node_count(); ++i) {
    if (grid.is_boundary(i)) continue;
    const DistanceSample ds = sample_distance(grid, i);
    const double gm = ds.grad_mag;
    const double b_factor =
        (par.p - 1.0) * (beta - 1.0) * gm * gm + ds.d * ds.laplacian +
        (par.p - 2.0) * ds.d * ds.quad +
        std::pow(par.m1, par.q - par.p + 1.0) *
            magnitude_power(gm, par.q - par.p + 2.0);
    const double margin =
        std::pow(par.m1, par.p - 1.0) * magnitude_power(gm, par.p - 2.0) *
            std::pow(ds.d, e1) * b_factor -
        lambda * (par.m1 / beta) * std::pow(ds.d, beta) + par.m2 - f_values[i];
    if (grid.dist[i] <= edge) {
      if (margin < rep.min_margin_collar) {
        rep.min_margin_collar = margin;
        rep.argmin_collar = i;
      }
    } else {
      if (margin < rep.min_margin_core) {
        rep.min_margin_core = margin;
        rep.argmin_core = i;
      }
    }
  }
  return rep;
}

} // namespace vhj
