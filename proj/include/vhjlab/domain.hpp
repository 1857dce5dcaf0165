#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <ostream>
#include <vector>

namespace vhj {

// Neighbor slots per node: -x, +x, -y, +y. Missing neighbors are -1.
inline constexpr int kMinusX = 0;
inline constexpr int kPlusX = 1;
inline constexpr int kMinusY = 2;
inline constexpr int kPlusY = 3;

// Diagonal slots per node (2D only): ++, +-, -+, --. Missing are -1.
struct Grid {
  int dimension = 1;
  double spacing = 0.0; // lattice step h
  double delta = 0.0;   // collar width separating near-boundary and core zones

  std::vector<double> x;
  std::vector<double> y; // empty in 1D
  std::vector<std::uint8_t> boundary;
  std::vector<double> dist; // distance to the boundary, 0 exactly at boundary

  std::vector<std::array<int, 4>> neighbors;
  std::vector<std::array<double, 4>> neighbor_dist;
  std::vector<std::array<int, 4>> diagonals; // empty in 1D

  std::vector<int> collar_nodes; // interior nodes with dist <= delta + h/2
  std::vector<int> core_nodes;   // remaining interior nodes

  int node_count() const { return static_cast<int>(x.size()); }
  bool is_boundary(int i) const { return boundary[i] != 0; }

  std::vector<int> interior_nodes() const;
  std::vector<int> boundary_nodes() const;

  // Domain diameter: b-a for the interval, 2*radius for the disc.
  double diameter = 0.0;
  double max_dist = 0.0; // max of dist over nodes
};

using GridPtr = std::shared_ptr<const Grid>;

// Equispaced nodes on [a, b], n+1 nodes, endpoints flagged as boundary.
// Rejects n < 4 and b <= a.
GridPtr build_interval_grid(double a, double b, int n);

// Cartesian lattice with n_per_axis cells per axis restricted to the closed
// disc of the given radius. Nodes whose lattice neighbors exit the disc are
// boundary-flagged and projected radially onto the circle. Rejects grids
// with fewer than 5 interior nodes.
GridPtr build_disc_grid(double radius, int n_per_axis);

// Columns: index, x[, y], d, is_boundary.
void write_grid_csv(const Grid& grid, std::ostream& os);

} // namespace vhj
