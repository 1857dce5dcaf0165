#include "vhjlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vhjlab/errors.hpp"

namespace vhj {

std::vector<int> Grid::interior_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (!is_boundary(i)) out.push_back(i);
  return out;
}

std::vector<int> Grid::boundary_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (is_boundary(i)) out.push_back(i);
  return out;
}

namespace {

// Interior nodes with dist within h/2 of delta land in the collar; the
// tie rule is deterministic so zone membership is stable across runs.
void split_zones(Grid& g) {
  g.collar_nodes.clear();
  g.core_nodes.clear();
  for (int i = 0; i < g.node_count(); ++i) {
    if (g.is_boundary(i)) continue;
    if (g.dist[i] <= g.delta + 0.5 * g.spacing)
      g.collar_nodes.push_back(i);
    else
      g.core_nodes.push_back(i);
  }
}

double default_delta(double diameter, double h) {
  return std::min(0.2 * diameter, 10.0 * h);
}

} // namespace

GridPtr build_interval_grid(double a, double b, int n) {
  if (n < 4) throw ConfigError("interval grid requires n >= 4");
  if (!(b > a)) throw ConfigError("interval grid requires b > a");

  auto g = std::make_shared<Grid>();
  g->dimension = 1;
  const double h = (b - a) / n;
  g->spacing = h;
  g->diameter = b - a;

  const int count = n + 1;
  g->x.resize(count);
  g->boundary.assign(count, 0);
  g->dist.resize(count);
  g->neighbors.assign(count, {-1, -1, -1, -1});
  g->neighbor_dist.assign(count, {0.0, 0.0, 0.0, 0.0});

  for (int i = 0; i < count; ++i) {
    const double xi = (i == n) ? b : a + i * h;
    g->x[i] = xi;
    g->dist[i] = std::min(xi - a, b - xi);
    if (i > 0) {
      g->neighbors[i][kMinusX] = i - 1;
      g->neighbor_dist[i][kMinusX] = h;
    }
    if (i < n) {
      g->neighbors[i][kPlusX] = i + 1;
      g->neighbor_dist[i][kPlusX] = h;
    }
  }
  g->boundary[0] = 1;
  g->boundary[n] = 1;
  g->dist[0] = 0.0;
  g->dist[n] = 0.0;

  g->delta = default_delta(g->diameter, h);
  g->max_dist = *std::max_element(g->dist.begin(), g->dist.end());
  split_zones(*g);
  return g;
}

GridPtr build_disc_grid(double radius, int n_per_axis) {
  if (!(radius > 0.0)) throw ConfigError("disc grid requires radius > 0");
  if (n_per_axis < 4) throw ConfigError("disc grid requires n_per_axis >= 4");

  const double h = 2.0 * radius / n_per_axis;
  const double r2 = radius * radius;
  const int m = n_per_axis + 1;

  auto inside = [&](int i, int j) {
    const double xi = -radius + i * h;
    const double yj = -radius + j * h;
    return xi * xi + yj * yj <= r2 * (1.0 + 1e-14);
  };

  auto g = std::make_shared<Grid>();
  g->dimension = 2;
  g->spacing = h;
  g->diameter = 2.0 * radius;

  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> latt;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      if (inside(i, j)) {
        index[{i, j}] = static_cast<int>(latt.size());
        latt.push_back({i, j});
      }

  const int count = static_cast<int>(latt.size());
  g->x.resize(count);
  g->y.resize(count);
  g->boundary.assign(count, 0);
  g->dist.resize(count);
  g->neighbors.assign(count, {-1, -1, -1, -1});
  g->neighbor_dist.assign(count, {0.0, 0.0, 0.0, 0.0});
  g->diagonals.assign(count, {-1, -1, -1, -1});

  int interior_count = 0;
  for (int k = 0; k < count; ++k) {
    const auto [i, j] = latt[k];
    double xi = -radius + i * h;
    double yj = -radius + j * h;
    const bool edge = !inside(i - 1, j) || !inside(i + 1, j) ||
                      !inside(i, j - 1) || !inside(i, j + 1) || i == 0 ||
                      i == n_per_axis || j == 0 || j == n_per_axis;
    if (edge) {
      g->boundary[k] = 1;
      const double r = std::sqrt(xi * xi + yj * yj);
      if (r > 0.0) {
        xi *= radius / r;
        yj *= radius / r;
      } else {
        xi = radius; // degenerate single-node case, rejected below anyway
        yj = 0.0;
      }
      g->dist[k] = 0.0;
    } else {
      g->dist[k] = radius - std::sqrt(xi * xi + yj * yj);
      ++interior_count;
    }
    g->x[k] = xi;
    g->y[k] = yj;
  }
  if (interior_count < 5)
    throw ConfigError("disc grid requires at least 5 interior nodes");

  auto find = [&](int i, int j) {
    auto it = index.find({i, j});
    return it == index.end() ? -1 : it->second;
  };
  for (int k = 0; k < count; ++k) {
    const auto [i, j] = latt[k];
    const int steps[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    for (int s = 0; s < 4; ++s) {
      const int nb = find(i + steps[s][0], j + steps[s][1]);
      g->neighbors[k][s] = nb;
      if (nb >= 0) {
        const double dx = g->x[nb] - g->x[k];
        const double dy = g->y[nb] - g->y[k];
        g->neighbor_dist[k][s] = std::sqrt(dx * dx + dy * dy);
      }
    }
    g->diagonals[k][0] = find(i + 1, j + 1);
    g->diagonals[k][1] = find(i + 1, j - 1);
    g->diagonals[k][2] = find(i - 1, j + 1);
    g->diagonals[k][3] = find(i - 1, j - 1);
  }

  g->delta = default_delta(g->diameter, h);
  g->max_dist = *std::max_element(g->dist.begin(), g->dist.end());
  split_zones(*g);
  return g;
}

void write_grid_csv(const Grid& grid, std::ostream& os) {
  os << "index,x";
  if (grid.dimension == 2) os << ",y";
  os << ",d,is_boundary\n";
  os.precision(17);
  for (int i = 0; i < grid.node_count(); ++i) {
    os << i << ',' << grid.x[i];
    if (grid.dimension == 2) os << ',' << grid.y[i];
    os << ',' << grid.dist[i] << ',' << int(grid.boundary[i]) << '\n';
  }
}

} // namespace vhj
