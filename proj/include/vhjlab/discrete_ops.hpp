#pragma once

#include <array>
#include <memory>
#include <vector>

#include "vhjlab/domain.hpp"

namespace vhj {

// A scalar field attached to its grid. Values are stored per node in grid
// index order.
struct Field {
  GridPtr grid;
  std::vector<double> values;

  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }
};

Field make_field(GridPtr grid, double fill = 0.0);
bool all_finite(const std::vector<double>& v);

// One-sided, centered, and second differences at a node. At boundary nodes
// the centered slot holds the inward difference, the missing one-sided slot
// stays zero (only realizable branches feed the upwind Hamiltonian), and the
// second differences are copied from the nearest interior node.
struct StencilSample {
  int dimension = 1;
  std::array<double, 2> backward{{0.0, 0.0}};
  std::array<double, 2> forward{{0.0, 0.0}};
  std::array<double, 2> centered{{0.0, 0.0}};
  std::array<double, 2> second{{0.0, 0.0}};
  double cross = 0.0; // mixed second difference, 2D only
};

StencilSample sample_stencil(const Grid& grid, const std::vector<double>& u,
                             int node);

// Upwind Hamiltonian |Du|^q: per axis max(max(D-,0), max(-D+,0)), axes
// combined by the Euclidean norm, then raised to the power q.
double hamiltonian(const StencilSample& s, double q);

// Expanded degenerate diffusion
//   |Dc|^(p-2) * (tr(D2u) + (p-2) <D2u ghat, ghat>)
// with ghat the normalized centered gradient (zero when the gradient
// vanishes). For p = 2 this is the plain Laplacian.
double p_laplacian(const StencilSample& s, double p);

// Conservative two-point flux form of the 1D diffusion,
//   (phi(D+) - phi(D-)) / h  with  phi(s) = |s|^(p-2) s.
// Identical to the expanded form for p = 2 on a uniform grid; used by the
// 1D marching kernels because each nodal update is then order-preserving
// for every dt below the step bound.
double p_laplacian_flux_1d(const StencilSample& s, double p, double h);

// -diffusion + hamiltonian - f_value, so that u_t = -spatial_residual.
// 1D interior rows use the flux-form diffusion, everything else the
// expanded form.
double spatial_residual(const Grid& grid, const std::vector<double>& u,
                        int node, double p, double q, double f_value);

// Max over nodes and axes of the one-sided difference magnitudes, combined
// across axes by the Euclidean norm. Feeds the step-size bound.
double max_onesided_gradient(const Grid& grid, const std::vector<double>& u);

// |s|^e with integer fast path; pow(0, 0) = 1.
double signed_power(double s, double e);   // |s|^(e-1) * s
double magnitude_power(double s, double e); // |s|^e

} // namespace vhj
