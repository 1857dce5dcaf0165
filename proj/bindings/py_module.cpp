#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vhjlab/analysis.hpp"
#include "vhjlab/barriers.hpp"
#include "vhjlab/ergodic.hpp"
#include "vhjlab/errors.hpp"
#include "vhjlab/expr.hpp"
#include "vhjlab/stationary.hpp"
#include "vhjlab/supconv.hpp"

namespace py = pybind11;
using namespace vhj;

namespace {

// The C++ side hands out shared_ptr<const Grid>; python sees a thin handle.
struct PyGrid {
  GridPtr grid;
};

SpaceTimeFn parse_spacetime(const std::string& text) {
  auto e = std::make_shared<Expr>(Expr::parse(text));
  return [e](double x, double y, double t) { return e->eval(x, y, t); };
}

SpaceFn parse_space(const std::string& text) {
  auto e = std::make_shared<Expr>(Expr::parse(text));
  return [e](double x, double y) { return e->eval(x, y, 0.0); };
}

py::dict trajectory_dict(const Trajectory& traj) {
  py::dict d;
  d["times"] = traj.times;
  d["snapshots"] = traj.snapshots;
  d["boundary_nodes"] = traj.boundary_nodes;
  d["boundary_values"] = traj.boundary_values;
  d["max_boundary_excess"] = traj.max_boundary_excess;
  d["max_gradient"] = traj.max_gradient;
  d["min_dt"] = traj.min_dt;
  d["total_steps"] = traj.total_steps;
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite-difference laboratory for a viscous Hamilton-Jacobi "
            "equation with p-Laplacian diffusion and generalized Dirichlet "
            "boundary data";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<PyGrid>(m, "Grid")
      .def_property_readonly("dimension",
                             [](const PyGrid& g) { return g.grid->dimension; })
      .def_property_readonly("spacing",
                             [](const PyGrid& g) { return g.grid->spacing; })
      .def_property_readonly("x", [](const PyGrid& g) { return g.grid->x; })
      .def_property_readonly("y", [](const PyGrid& g) { return g.grid->y; })
      .def_property_readonly("dist",
                             [](const PyGrid& g) { return g.grid->dist; })
      .def_property_readonly(
          "boundary",
          [](const PyGrid& g) {
            std::vector<bool> out;
            for (auto b : g.grid->boundary) out.push_back(b != 0);
            return out;
          })
      .def_property_readonly(
          "node_count", [](const PyGrid& g) { return g.grid->node_count(); })
      .def("__len__", [](const PyGrid& g) { return g.grid->node_count(); });

  m.def(
      "interval_grid",
      [](double a, double b, int n) { return PyGrid{build_interval_grid(a, b, n)}; },
      py::arg("a"), py::arg("b"), py::arg("n"),
      "equispaced grid on [a, b] with n cells");
  m.def(
      "disc_grid",
      [](double radius, int n) { return PyGrid{build_disc_grid(radius, n)}; },
      py::arg("radius"), py::arg("n"),
      "lattice restricted to the closed disc, boundary projected radially");

  m.def(
      "solve_parabolic",
      [](const PyGrid& grid, double p, double q, double horizon,
         const std::string& f, const std::string& g, const std::string& u0,
         double cfl, double g_cap, int snapshots) {
        ParabolicProblem prob;
        prob.grid = grid.grid;
        prob.p = p;
        prob.q = q;
        prob.horizon = horizon;
        const Expr fe = Expr::parse(f);
        prob.source_time_dependent = fe.uses_time();
        prob.source = parse_spacetime(f);
        prob.boundary = parse_spacetime(g);
        auto u0fn = parse_space(u0);
        prob.initial = u0fn;
        StepControl c;
        c.cfl_safety = cfl;
        c.gradient_cap = g_cap;
        c.snapshot_count = snapshots;
        return trajectory_dict(vhj::solve_parabolic(prob, c));
      },
      py::arg("grid"), py::arg("p"), py::arg("q"), py::arg("horizon"),
      py::arg("f") = "0", py::arg("g") = "0", py::arg("u0") = "0",
      py::arg("cfl") = 0.5, py::arg("g_cap") = 0.0, py::arg("snapshots") = 11,
      "explicit march of the initial-boundary value problem; data are "
      "expression strings in x, y, t");

  m.def(
      "solve_stationary",
      [](const PyGrid& grid, double p, double q, double lambda,
         const std::string& f, const std::string& g, double tol) {
        StationaryProblem prob;
        prob.grid = grid.grid;
        prob.p = p;
        prob.q = q;
        prob.lambda = lambda;
        prob.source = parse_space(f);
        prob.boundary = parse_space(g);
        StationaryOptions opt;
        opt.tol = tol;
        const StationaryResult res = vhj::solve_stationary(prob, opt);
        py::dict d;
        d["u"] = res.u.values;
        d["steps"] = res.steps;
        d["residual"] = res.residual;
        d["tol"] = res.tol;
        d["datum_ever_active"] = res.datum_ever_active;
        return d;
      },
      py::arg("grid"), py::arg("p"), py::arg("q"), py::arg("lam"),
      py::arg("f") = "0", py::arg("g") = "0", py::arg("tol") = 0.0,
      "march the discounted stationary problem to steady state");

  m.def(
      "solve_state_constraint",
      [](const PyGrid& grid, double p, double q, double lambda,
         const std::string& f, double m2) {
        StateConstraintOptions opt;
        const StateConstraintResult res = vhj::solve_state_constraint(
            grid.grid, p, q, lambda, parse_space(f), m2, opt);
        py::dict d;
        d["u"] = res.u.values;
        d["big_datum"] = res.big_datum;
        d["max_value"] = res.max_value;
        d["constraint_slack"] = res.constraint_slack;
        d["cross_check_gap"] = res.cross_check_gap;
        d["steps"] = res.steps;
        d["residual"] = res.residual;
        return d;
      },
      py::arg("grid"), py::arg("p"), py::arg("q"), py::arg("lam"),
      py::arg("f"), py::arg("m2"),
      "stationary solve with the large constant datum 2 m2 / lam standing in "
      "for the state constraint");

  m.def(
      "ergodic_solve",
      [](const PyGrid& grid, double p, double q, const std::string& f,
         int k_max, bool cross_check) {
        if (k_max < 1 || k_max > 40)
          throw ConfigError("k_max must lie in [1, 40]");
        std::vector<double> lambdas;
        for (int k = 1; k <= k_max; ++k) lambdas.push_back(std::ldexp(1.0, -k));
        ErgodicOptions opt;
        opt.cross_check = cross_check;
        const ErgodicResult res =
            vhj::ergodic_solve(grid.grid, p, q, parse_space(f), lambdas, opt);
        py::dict d;
        d["c"] = res.c;
        d["converged"] = res.converged;
        d["band"] = res.band;
        d["band_excess"] = res.band_excess;
        d["anchor"] = res.anchor;
        d["profile"] = res.profile;
        py::list levels;
        for (const ErgodicLevel& lv : res.levels) {
          py::dict row;
          row["lam"] = lv.lambda;
          row["c"] = lv.c_estimate;
          row["residual"] = lv.residual;
          row["steps"] = lv.steps;
          levels.append(row);
        }
        d["levels"] = levels;
        return d;
      },
      py::arg("grid"), py::arg("p"), py::arg("q"), py::arg("f") = "0",
      py::arg("k_max") = 10, py::arg("cross_check") = true,
      "vanishing-discount sweep; returns the constant, the level table, and "
      "the normalized profile");

  m.def("beta_exponent", &beta_exponent, py::arg("p"), py::arg("q"),
        "critical regularity exponent (q - p) / (q - p + 1)");

  m.def(
      "holder_seminorm",
      [](const PyGrid& grid, const std::vector<double>& values, double beta) {
        const HolderReport rep = holder_seminorm(*grid.grid, values, beta);
        py::dict d;
        d["seminorm"] = rep.seminorm;
        d["node_a"] = rep.node_a;
        d["node_b"] = rep.node_b;
        return d;
      },
      py::arg("grid"), py::arg("values"), py::arg("beta"),
      "exact discrete Holder seminorm over all node pairs");

  m.def(
      "asymptotic_slope",
      [](const std::vector<double>& times,
         const std::vector<std::vector<double>>& snapshots,
         double window_fraction) {
        Trajectory traj;
        traj.times = times;
        traj.snapshots = snapshots;
        const SlopeReport rep = asymptotic_slope(traj, window_fraction);
        py::dict d;
        d["slope"] = rep.slope;
        d["intercept"] = rep.intercept;
        d["samples"] = rep.samples;
        d["max_mean_deviation"] = rep.max_mean_deviation;
        return d;
      },
      py::arg("times"), py::arg("snapshots"), py::arg("window") = 0.5,
      "least-squares slope of the spatial mean over the trailing window");

  m.def(
      "sup_convolve",
      [](const std::vector<double>& times,
         const std::vector<std::vector<double>>& values, double alpha) {
        TimeSeriesField series;
        series.times = times;
        series.values = values;
        const TimeSeriesField reg = vhj::sup_convolve(series, alpha);
        const LipschitzReport lip = check_time_lipschitz(reg, alpha);
        const WindowReport win = check_maximizer_window(series, alpha);
        py::dict d;
        d["values"] = reg.values;
        d["lipschitz_slope"] = lip.max_slope;
        d["lipschitz_bound"] = lip.bound + lip.slack;
        d["lipschitz_pass"] = lip.pass;
        d["window_offset"] = win.max_offset;
        d["window_bound"] = win.bound;
        d["window_pass"] = win.pass;
        return d;
      },
      py::arg("times"), py::arg("values"), py::arg("alpha"),
      "sup-convolution in time over the stored snapshots, with the "
      "regularity checks");

  m.def(
      "auto_constants",
      [](const PyGrid& grid, double p, double q, double f_norm,
         double lambda) {
        DomainNorms norms =
            compute_domain_norms(*grid.grid, grid.grid->delta, nullptr);
        norms.f_norm = f_norm;
        const BarrierParams par =
            auto_constants(p, q, grid.grid->delta, norms, lambda);
        py::dict d;
        d["beta"] = par.beta;
        d["c1"] = par.c1;
        d["c2"] = par.c2;
        d["m1"] = par.m1;
        d["m2"] = par.m2;
        d["delta"] = par.delta;
        d["target_c"] = par.target_c;
        return d;
      },
      py::arg("grid"), py::arg("p"), py::arg("q"), py::arg("f_norm") = 1.0,
      py::arg("lam") = 1.0,
      "calibrate the barrier constants for the grid's collar");
}
