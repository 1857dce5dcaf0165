#include "vhjlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "vhjlab/analysis.hpp"
#include "vhjlab/barriers.hpp"
#include "vhjlab/ergodic.hpp"
#include "vhjlab/errors.hpp"
#include "vhjlab/expr.hpp"
#include "vhjlab/io.hpp"
#include "vhjlab/stationary.hpp"

namespace vhj {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

std::string artifact_path(const RunContext& ctx, const std::string& name) {
  fs::path dir(ctx.out_dir.empty() ? "." : ctx.out_dir);
  fs::create_directories(dir);
  return (dir / name).string();
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os << j.dump(2) << "\n";
}

ordered_json summary_header(const std::string& command, const RunContext& ctx) {
  ordered_json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["timestamp"] = timestamp_utc();
  j["seed"] = ctx.seed;
  return j;
}

struct DomainSpec {
  std::string kind = "interval";
  double a = 0.0, b = 1.0, radius = 1.0;
  long long n = 128;
};

DomainSpec domain_spec(const ConfigFile& cfg, const std::string& section) {
  DomainSpec d;
  d.kind = cfg.get(section, "domain", "interval");
  d.a = cfg.number(section, "a", 0.0);
  d.b = cfg.number(section, "b", 1.0);
  d.radius = cfg.number(section, "radius", 1.0);
  d.n = cfg.integer(section, "n", 128);
  if (d.kind != "interval" && d.kind != "disc")
    throw ConfigError("domain must be 'interval' or 'disc' (got '" + d.kind +
                      "')");
  if (d.kind == "interval" && (cfg.has(section, "radius")))
    throw ConfigError("key 'radius' only applies to the disc domain");
  if (d.kind == "disc" && (cfg.has(section, "a") || cfg.has(section, "b")))
    throw ConfigError("keys 'a'/'b' only apply to the interval domain");
  return d;
}

GridPtr build_grid(const DomainSpec& d) {
  if (d.kind == "interval")
    return build_interval_grid(d.a, d.b, static_cast<int>(d.n));
  return build_disc_grid(d.radius, static_cast<int>(d.n));
}

ordered_json domain_json(const DomainSpec& d, const Grid& g) {
  ordered_json j;
  j["kind"] = d.kind;
  if (d.kind == "interval") {
    j["a"] = d.a;
    j["b"] = d.b;
  } else {
    j["radius"] = d.radius;
  }
  j["n"] = d.n;
  j["spacing"] = g.spacing;
  j["nodes"] = g.node_count();
  return j;
}

SpaceTimeFn spacetime_fn(const Expr& e) {
  auto sp = std::make_shared<Expr>(e);
  return [sp](double x, double y, double t) { return sp->eval(x, y, t); };
}

SpaceFn space_fn(const Expr& e) {
  auto sp = std::make_shared<Expr>(e);
  return [sp](double x, double y) { return sp->eval(x, y, 0.0); };
}

// Splits on commas and whitespace; every token must parse fully as a number.
std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::string token;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream ns(normalized);
  while (ns >> token) {
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + token + "' in " + what);
    }
    if (pos != token.size())
      throw ConfigError("bad number '" + token + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(what + " is empty");
  return out;
}

StepControl step_control(const ConfigFile& cfg, const std::string& problem,
                         const std::string& control) {
  StepControl c;
  c.cfl_safety = cfg.number(problem, "cfl", 0.5);
  c.gradient_cap = cfg.number(problem, "g_cap", 0.0);
  c.dt_floor = cfg.number(control, "dt_floor", 1e-12);
  c.snapshot_count = static_cast<int>(cfg.integer(control, "snapshots", 11));
  c.max_steps = cfg.integer(control, "max_steps", 2'000'000'000LL);
  return c;
}

ordered_json control_json(const StepControl& c) {
  ordered_json j;
  j["cfl"] = c.cfl_safety;
  j["g_cap"] = c.gradient_cap;
  j["dt_floor"] = c.dt_floor;
  j["snapshots"] = c.snapshot_count;
  j["max_steps"] = c.max_steps;
  return j;
}

void write_csv_file(const std::string& path, const SeriesData& data) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  write_series_csv(os, data);
}

void write_csv_file(const std::string& path, const FieldData& data) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  write_field_csv(os, data);
}

void write_dat_file(const std::string& path, const std::string& comment,
                    const std::vector<double>& a,
                    const std::vector<double>& b) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  write_profile_dat(os, comment, a, b);
}

SeriesData read_csv_series(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open '" + path + "'");
  return read_series_csv(is);
}

// Profile abscissa for two-column plots: the coordinate in 1D, the boundary
// distance in 2D.
std::vector<double> profile_abscissa(const Grid& g, std::string* label) {
  if (g.dimension == 1) {
    *label = "x";
    return g.x;
  }
  *label = "d";
  return g.dist;
}

ordered_json node_json(const Grid& g, int node) {
  ordered_json j;
  j["node"] = node;
  if (node >= 0) {
    j["x"] = g.x[node];
    if (g.dimension == 2) j["y"] = g.y[node];
  }
  return j;
}

ParabolicProblem parabolic_from(const ConfigFile& cfg, GridPtr grid,
                                const std::string& section, const Expr& f,
                                const Expr& g, const Expr& u0) {
  ParabolicProblem prob;
  prob.grid = std::move(grid);
  prob.p = cfg.number(section, "p", 2.0);
  prob.q = cfg.number(section, "q", 3.0);
  prob.horizon = cfg.number(section, "T", 1.0);
  prob.source = spacetime_fn(f);
  prob.boundary = spacetime_fn(g);
  auto u0fn = space_fn(u0);
  prob.initial = u0fn;
  prob.source_time_dependent = f.uses_time();
  return prob;
}

ordered_json trajectory_diagnostics(const Trajectory& traj) {
  ordered_json diag;
  diag["total_steps"] = traj.total_steps;
  diag["min_dt"] = traj.min_dt;
  diag["max_gradient"] = traj.max_gradient;
  diag["max_boundary_excess"] = traj.max_boundary_excess;
  diag["sup_f"] = traj.sup_f;
  diag["sup_g"] = traj.sup_g;
  diag["sup_u0"] = traj.sup_u0;

  ordered_json hist = ordered_json::array();
  for (size_t k = 0; k < traj.interval_diag.size(); ++k) {
    const SnapshotDiag& d = traj.interval_diag[k];
    ordered_json row;
    row["t_end"] = traj.times[k + 1];
    row["max_gradient"] = d.max_gradient;
    row["min_dt"] = d.min_dt;
    row["max_dt"] = d.max_dt;
    row["steps"] = d.steps;
    row["detached_boundary_nodes"] = d.detached_boundary_nodes;
    hist.push_back(row);
  }
  diag["gradient_history"] = hist;

  const auto events = detect_boundary_loss(traj, 0.0);
  constexpr size_t kMaxListed = 200;
  ordered_json ev = ordered_json::array();
  for (size_t k = 0; k < events.size() && k < kMaxListed; ++k) {
    ordered_json row;
    row["t"] = events[k].time;
    row["node"] = events[k].node;
    row["gap"] = events[k].gap;
    ev.push_back(row);
  }
  diag["detachment_events"] = ev;
  diag["detachment_events_total"] = events.size();
  return diag;
}

} // namespace

int thread_count() {
  const char* env = std::getenv("VHJLAB_THREADS");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || v < 1)
      throw ConfigError("VHJLAB_THREADS must be a positive integer");
    return static_cast<int>(std::min(v, 64L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(std::min(hw, 8u));
}

nlohmann::ordered_json run_solve_parabolic(const ConfigFile& cfg,
                                           const RunContext& ctx) {
  cfg.enforce({{"problem",
                {"p", "q", "domain", "a", "b", "radius", "n", "T", "cfl",
                 "g_cap", "f", "g", "u0"}},
               {"control", {"snapshots", "dt_floor", "max_steps"}},
               {"output", {"prefix"}}});

  const DomainSpec dom = domain_spec(cfg, "problem");
  GridPtr grid = build_grid(dom);
  const Expr f = Expr::parse(cfg.get("problem", "f", "0"));
  const Expr g = Expr::parse(cfg.get("problem", "g", "0"));
  const Expr u0 = Expr::parse(cfg.get("problem", "u0", "0"));
  const ParabolicProblem prob =
      parabolic_from(cfg, grid, "problem", f, g, u0);
  const StepControl control = step_control(cfg, "problem", "control");
  const std::string prefix = cfg.get("output", "prefix", "parabolic");

  const Trajectory traj = solve_parabolic(prob, control);

  const std::string csv = artifact_path(ctx, prefix + "_snapshots.csv");
  write_csv_file(csv, series_from_trajectory(traj));

  std::string label;
  const std::vector<double> abscissa = profile_abscissa(*grid, &label);
  const std::string final_dat = artifact_path(ctx, prefix + "_final.dat");
  write_dat_file(final_dat, label + "  u(., T)", abscissa,
                 traj.snapshots.back());

  const std::string mean_dat = artifact_path(ctx, prefix + "_mean.dat");
  write_dat_file(mean_dat, "t  mean_x u(x, t)", traj.times,
                 traj.snapshot_mean());

  std::vector<double> interval_end, interval_grad;
  for (size_t k = 0; k < traj.interval_diag.size(); ++k) {
    interval_end.push_back(traj.times[k + 1]);
    interval_grad.push_back(traj.interval_diag[k].max_gradient);
  }
  const std::string grad_dat = artifact_path(ctx, prefix + "_gradient.dat");
  write_dat_file(grad_dat, "t  max upwind gradient over [t_prev, t]",
                 interval_end, interval_grad);

  ordered_json j = summary_header("solve-parabolic", ctx);
  ordered_json par;
  par["p"] = prob.p;
  par["q"] = prob.q;
  par["domain"] = domain_json(dom, *grid);
  par["T"] = prob.horizon;
  par["f"] = f.text();
  par["g"] = g.text();
  par["u0"] = u0.text();
  par["control"] = control_json(control);
  j["parameters"] = par;
  j["artifacts"] = {{"snapshots_csv", csv},
                    {"final_dat", final_dat},
                    {"mean_dat", mean_dat},
                    {"gradient_dat", grad_dat}};
  j["diagnostics"] = trajectory_diagnostics(traj);

  write_json_file(artifact_path(ctx, prefix + "_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_solve_stationary(const ConfigFile& cfg,
                                            const RunContext& ctx) {
  cfg.enforce({{"problem",
                {"p", "q", "domain", "a", "b", "radius", "n", "lambda", "cfl",
                 "g_cap", "f", "g", "state_constraint", "m2"}},
               {"control",
                {"tol", "dt_floor", "max_steps", "deflate", "deflate_interval",
                 "cross_check"}},
               {"output", {"prefix"}}});

  const DomainSpec dom = domain_spec(cfg, "problem");
  GridPtr grid = build_grid(dom);
  const double p = cfg.number("problem", "p", 2.0);
  const double q = cfg.number("problem", "q", 3.0);
  const double lambda = cfg.number("problem", "lambda", 1.0);
  const bool constrained = cfg.flag("problem", "state_constraint", false);
  const Expr f = Expr::parse(cfg.get("problem", "f", "0"));
  const std::string prefix = cfg.get("output", "prefix", "stationary");

  StationaryOptions opt;
  opt.control = step_control(cfg, "problem", "control");
  opt.control.snapshot_count = 2; // unused by the stationary march
  opt.tol = cfg.number("control", "tol", 0.0);
  opt.deflate = cfg.flag("control", "deflate", false);
  opt.deflate_interval =
      static_cast<int>(cfg.integer("control", "deflate_interval", 64));

  ordered_json j = summary_header("solve-stationary", ctx);
  ordered_json par;
  par["p"] = p;
  par["q"] = q;
  par["lambda"] = lambda;
  par["domain"] = domain_json(dom, *grid);
  par["f"] = f.text();
  par["state_constraint"] = constrained;

  Field solution = make_field(grid);
  ordered_json diag;

  if (constrained) {
    if (cfg.has("problem", "g"))
      throw ConfigError(
          "state-constraint mode derives its datum from m2; remove key 'g'");
    const double m2 = cfg.require_number("problem", "m2");
    StateConstraintOptions sopt;
    sopt.base = opt;
    sopt.cross_check = cfg.flag("control", "cross_check", true);
    const StateConstraintResult res =
        solve_state_constraint(grid, p, q, lambda, space_fn(f), m2, sopt);
    solution = res.u;
    par["m2"] = m2;
    diag["iterations"] = res.steps;
    diag["residual"] = res.residual;
    diag["big_datum"] = res.big_datum;
    diag["max_value"] = res.max_value;
    diag["boundary_margin"] = res.big_datum - res.max_value;
    diag["constraint_slack"] = res.constraint_slack;
    diag["cross_check_gap"] = res.cross_check_gap;
  } else {
    const Expr g = Expr::parse(cfg.get("problem", "g", "0"));
    par["g"] = g.text();
    StationaryProblem prob;
    prob.grid = grid;
    prob.p = p;
    prob.q = q;
    prob.lambda = lambda;
    prob.source = space_fn(f);
    prob.boundary = space_fn(g);
    const StationaryResult res = solve_stationary(prob, opt);
    solution = res.u;
    double margin = std::numeric_limits<double>::infinity();
    for (int b : grid->boundary_nodes())
      margin = std::min(margin,
                        prob.boundary(grid->x[b],
                                      grid->dimension == 2 ? grid->y[b] : 0.0) -
                            res.u.values[b]);
    diag["iterations"] = res.steps;
    diag["residual"] = res.residual;
    diag["tol"] = res.tol;
    diag["boundary_margin"] = margin;
    diag["datum_ever_active"] = res.datum_ever_active;
    diag["deflations"] = res.deflations;
  }

  par["control"] = control_json(opt.control);
  par["tol"] = opt.tol;
  par["deflate"] = opt.deflate;
  j["parameters"] = par;

  const std::string csv = artifact_path(ctx, prefix + "_solution.csv");
  write_csv_file(csv, field_from(*grid, solution.values));
  std::string label;
  const std::vector<double> abscissa = profile_abscissa(*grid, &label);
  const std::string dat = artifact_path(ctx, prefix + "_profile.dat");
  write_dat_file(dat, label + "  u", abscissa, solution.values);

  j["artifacts"] = {{"solution_csv", csv}, {"profile_dat", dat}};
  j["diagnostics"] = diag;
  write_json_file(artifact_path(ctx, prefix + "_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_ergodic(const ConfigFile& cfg,
                                   const RunContext& ctx) {
  cfg.enforce({{"problem",
                {"p", "q", "domain", "a", "b", "radius", "n", "f", "cfl",
                 "g_cap"}},
               {"control",
                {"tol", "dt_floor", "max_steps", "k_max", "lambdas", "delta",
                 "anchor", "cross_check"}},
               {"output", {"prefix"}}});

  const DomainSpec dom = domain_spec(cfg, "problem");
  GridPtr grid = build_grid(dom);
  const double p = cfg.number("problem", "p", 2.0);
  const double q = cfg.number("problem", "q", 3.0);
  const Expr f = Expr::parse(cfg.get("problem", "f", "0"));
  const std::string prefix = cfg.get("output", "prefix", "ergodic");

  std::vector<double> lambdas;
  if (cfg.has("control", "lambdas")) {
    if (cfg.has("control", "k_max"))
      throw ConfigError("give either 'lambdas' or 'k_max', not both");
    lambdas = parse_number_list(cfg.require("control", "lambdas"),
                                "control.lambdas");
  } else {
    const long long k_max = cfg.integer("control", "k_max", 10);
    if (k_max < 1 || k_max > 40)
      throw ConfigError("k_max must lie in [1, 40]");
    for (long long k = 1; k <= k_max; ++k)
      lambdas.push_back(std::ldexp(1.0, static_cast<int>(-k)));
  }

  ErgodicOptions opt;
  opt.control = step_control(cfg, "problem", "control");
  opt.tol = cfg.number("control", "tol", 0.0);
  opt.anchor = static_cast<int>(cfg.integer("control", "anchor", -1));
  opt.cross_check = cfg.flag("control", "cross_check", true);
  opt.delta = cfg.number("control", "delta", 0.0);

  const ErgodicResult res = ergodic_solve(grid, p, q, space_fn(f), lambdas, opt);

  ordered_json j = summary_header("ergodic", ctx);
  ordered_json par;
  par["p"] = p;
  par["q"] = q;
  par["domain"] = domain_json(dom, *grid);
  par["f"] = f.text();
  par["lambdas"] = lambdas;
  par["anchor"] = node_json(*grid, res.anchor);
  par["control"] = control_json(opt.control);
  par["tol"] = opt.tol;
  j["parameters"] = par;

  ordered_json table = ordered_json::array();
  for (const ErgodicLevel& lv : res.levels) {
    ordered_json row;
    row["lambda"] = lv.lambda;
    row["c"] = lv.c_estimate;
    row["residual"] = lv.residual;
    row["steps"] = lv.steps;
    row["big_datum"] = lv.big_datum;
    row["constraint_slack"] = lv.constraint_slack;
    row["cross_check_gap"] = lv.cross_check_gap;
    table.push_back(row);
  }

  ordered_json diag;
  diag["c"] = res.c;
  diag["converged"] = res.converged;
  diag["band"] = res.band;
  diag["band_excess"] = res.band_excess;
  diag["levels"] = table;
  ordered_json consts;
  consts["beta"] = res.params.beta;
  consts["c1"] = res.params.c1;
  consts["c2"] = res.params.c2;
  consts["m1"] = res.params.m1;
  consts["m2"] = res.params.m2;
  consts["delta"] = res.params.delta;
  consts["target_c"] = res.params.target_c;
  diag["constants"] = consts;
  j["diagnostics"] = diag;

  const std::string csv = artifact_path(ctx, prefix + "_profile.csv");
  write_csv_file(csv, field_from(*grid, res.profile));
  std::string label;
  const std::vector<double> abscissa = profile_abscissa(*grid, &label);
  const std::string dat = artifact_path(ctx, prefix + "_profile.dat");
  write_dat_file(dat, label + "  w (normalized at the anchor)", abscissa,
                 res.profile);
  std::vector<double> ls, cs;
  for (const ErgodicLevel& lv : res.levels) {
    ls.push_back(lv.lambda);
    cs.push_back(lv.c_estimate);
  }
  const std::string cdat = artifact_path(ctx, prefix + "_c.dat");
  write_dat_file(cdat, "lambda  c", ls, cs);

  j["artifacts"] = {{"profile_csv", csv},
                    {"profile_dat", dat},
                    {"c_dat", cdat}};
  write_json_file(artifact_path(ctx, prefix + "_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_compare(const ConfigFile& cfg,
                                   const RunContext& ctx) {
  cfg.enforce({{"problem",
                {"p", "q", "domain", "a", "b", "radius", "n", "T", "cfl",
                 "g_cap", "f", "g", "u0"}},
               {"problem2", {"f", "g", "u0"}},
               {"control", {"snapshots", "dt_floor", "max_steps"}},
               {"output", {"prefix"}}});
  if (!cfg.has_section("problem2"))
    throw ConfigError("compare needs a [problem2] section with the upper data");

  const DomainSpec dom = domain_spec(cfg, "problem");
  GridPtr grid = build_grid(dom);
  const Expr f1 = Expr::parse(cfg.get("problem", "f", "0"));
  const Expr g1 = Expr::parse(cfg.get("problem", "g", "0"));
  const Expr u01 = Expr::parse(cfg.get("problem", "u0", "0"));
  const Expr f2 = Expr::parse(cfg.get("problem2", "f", cfg.get("problem", "f", "0")));
  const Expr g2 = Expr::parse(cfg.get("problem2", "g", cfg.get("problem", "g", "0")));
  const Expr u02 =
      Expr::parse(cfg.get("problem2", "u0", cfg.get("problem", "u0", "0")));

  const ParabolicProblem lower = parabolic_from(cfg, grid, "problem", f1, g1, u01);
  ParabolicProblem upper = parabolic_from(cfg, grid, "problem", f2, g2, u02);
  upper.source_time_dependent = f2.uses_time();
  const StepControl control = step_control(cfg, "problem", "control");
  const std::string prefix = cfg.get("output", "prefix", "compare");

  const ComparisonReport rep = comparison_harness(lower, upper, control);

  ordered_json j = summary_header("compare", ctx);
  ordered_json par;
  par["p"] = lower.p;
  par["q"] = lower.q;
  par["domain"] = domain_json(dom, *grid);
  par["T"] = lower.horizon;
  par["lower"] = {{"f", f1.text()}, {"g", g1.text()}, {"u0", u01.text()}};
  par["upper"] = {{"f", f2.text()}, {"g", g2.text()}, {"u0", u02.text()}};
  par["control"] = control_json(control);
  j["parameters"] = par;
  j["diagnostics"] = {{"max_violation", rep.max_violation},
                      {"max_gap", rep.max_gap},
                      {"min_gap", rep.min_gap},
                      {"ordered", rep.max_violation <= 1e-10}};
  write_json_file(artifact_path(ctx, prefix + "_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_compare_csv(const std::string& first,
                                       const std::string& second,
                                       const RunContext& ctx) {
  const SeriesData a = read_csv_series(first);
  const SeriesData b = read_csv_series(second);
  if (a.dimension != b.dimension || a.x.size() != b.x.size())
    throw ConfigError("the two series live on different grids");
  if (a.times.size() != b.times.size())
    throw ConfigError("the two series have different snapshot counts");
  for (size_t k = 0; k < a.times.size(); ++k)
    if (std::abs(a.times[k] - b.times[k]) > 1e-12 * (1.0 + std::abs(a.times[k])))
      throw ConfigError("snapshot times disagree at index " +
                        std::to_string(k));

  double max_violation = 0.0, max_gap = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < a.times.size(); ++k)
    for (size_t i = 0; i < a.x.size(); ++i) {
      const double gap = b.values[k][i] - a.values[k][i];
      max_violation = std::max(max_violation, -gap);
      max_gap = std::max(max_gap, std::abs(gap));
      min_gap = std::min(min_gap, gap);
    }

  ordered_json j = summary_header("compare", ctx);
  j["parameters"] = {{"first", first}, {"second", second}};
  j["diagnostics"] = {{"max_violation", max_violation},
                      {"max_gap", max_gap},
                      {"min_gap", min_gap},
                      {"ordered", max_violation <= 1e-10}};
  write_json_file(artifact_path(ctx, "compare_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_verify_barrier(const BarrierArgs& args,
                                          const RunContext& ctx) {
  DomainSpec dom;
  dom.kind = args.domain;
  dom.a = args.a;
  dom.b = args.b;
  dom.radius = args.radius;
  dom.n = args.n;
  if (dom.kind != "interval" && dom.kind != "disc")
    throw ConfigError("domain must be 'interval' or 'disc' (got '" + dom.kind +
                      "')");
  GridPtr grid = build_grid(dom);
  const double delta = args.delta > 0.0 ? args.delta : grid->delta;

  DomainNorms norms = compute_domain_norms(*grid, delta, nullptr);
  norms.f_norm = std::abs(args.c_bound);
  const BarrierParams params =
      auto_constants(args.p, args.q, delta, norms, args.lambda);

  const H2Report h2 =
      verify_H2(params, std::abs(args.c_bound), args.samples, grid->dimension);
  const std::vector<double> f_values(
      static_cast<size_t>(grid->node_count()), std::abs(args.c_bound));
  const UbarReport ubar = verify_ubar(*grid, args.lambda, f_values, params);

  ordered_json j = summary_header("verify-barrier", ctx);
  ordered_json par;
  par["p"] = args.p;
  par["q"] = args.q;
  par["C"] = args.c_bound;
  par["lambda"] = args.lambda;
  par["delta"] = delta;
  par["samples"] = args.samples;
  par["domain"] = domain_json(dom, *grid);
  j["parameters"] = par;

  ordered_json consts;
  consts["beta"] = params.beta;
  consts["c1"] = params.c1;
  consts["c2"] = params.c2;
  consts["m1"] = params.m1;
  consts["m2"] = params.m2;
  consts["target_c"] = params.target_c;
  j["constants"] = consts;

  ordered_json margins;
  margins["interior_barrier"] = h2.min_margin;
  margins["collar_supersolution"] = ubar.min_margin_collar;
  margins["core_supersolution"] = ubar.min_margin_core;
  margins["all_positive"] = h2.min_margin > 0.0 &&
                            ubar.min_margin_collar > 0.0 &&
                            ubar.min_margin_core > 0.0;
  j["margins"] = margins;

  ordered_json worst;
  worst["interior_barrier"] = {{"x", h2.worst_point[0]},
                               {"y", h2.worst_point[1]},
                               {"radius", h2.worst_radius},
                               {"samples", h2.samples}};
  worst["collar_supersolution"] = node_json(*grid, ubar.argmin_collar);
  worst["core_supersolution"] = node_json(*grid, ubar.argmin_core);
  j["worst_points"] = worst;

  write_json_file(artifact_path(ctx, "verify_barrier_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_supconv(const SupconvArgs& args,
                                   const RunContext& ctx) {
  const SeriesData in = read_csv_series(args.input);
  const TimeSeriesField series = to_time_series(in);
  const TimeSeriesField reg = sup_convolve(series, args.alpha);
  const LipschitzReport lip = check_time_lipschitz(reg, args.alpha);
  const WindowReport win = check_maximizer_window(series, args.alpha);

  double min_gain = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < reg.values.size(); ++k)
    for (size_t i = 0; i < reg.values[k].size(); ++i)
      min_gain = std::min(min_gain, reg.values[k][i] - series.values[k][i]);

  SeriesData out = in;
  out.values = reg.values;
  const std::string csv = artifact_path(ctx, "supconv_regularized.csv");
  write_csv_file(csv, out);

  std::vector<double> means;
  for (const auto& row : reg.values) {
    double acc = 0.0;
    for (double v : row) acc += v;
    means.push_back(acc / static_cast<double>(row.size()));
  }
  const std::string dat = artifact_path(ctx, "supconv_mean.dat");
  write_dat_file(dat, "t  mean_x u_alpha(x, t)", reg.times, means);

  ordered_json j = summary_header("supconv", ctx);
  j["parameters"] = {{"input", args.input},
                     {"alpha", args.alpha},
                     {"k_bound", series.k_bound()},
                     {"sup_norm", series.sup_norm()}};
  ordered_json diag;
  diag["dominates_input"] = min_gain >= 0.0;
  diag["min_gain"] = min_gain;
  diag["lipschitz"] = {{"max_slope", lip.max_slope},
                       {"bound", lip.bound},
                       {"slack", lip.slack},
                       {"pass", lip.pass}};
  diag["maximizer_window"] = {{"max_offset", win.max_offset},
                              {"bound", win.bound},
                              {"pass", win.pass}};
  j["diagnostics"] = diag;
  j["artifacts"] = {{"regularized_csv", csv}, {"mean_dat", dat}};
  write_json_file(artifact_path(ctx, "supconv_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_holder(const HolderArgs& args,
                                  const RunContext& ctx) {
  std::ifstream is(args.input);
  if (!is) throw ConfigError("cannot open '" + args.input + "'");
  std::string head;
  std::getline(is, head);
  is.seekg(0);

  std::vector<double> x, y, u;
  double sample_time = 0.0;
  bool from_series = !head.empty() && (head[0] == 't' || head[0] == 'T');
  if (from_series) {
    const SeriesData s = read_series_csv(is);
    x = s.x;
    if (s.dimension == 2) y = s.y;
    u = s.values.back();
    sample_time = s.times.back();
  } else {
    const FieldData f = read_field_csv(is);
    x = f.x;
    if (f.dimension == 2) y = f.y;
    u = f.values;
  }

  double beta = args.beta;
  if (beta <= 0.0) {
    if (args.p <= 0.0 || args.q <= 0.0)
      throw ConfigError("provide --beta, or both --p and --q");
    beta = beta_exponent(args.p, args.q);
  }
  if (beta > 1.0) throw ConfigError("beta must lie in (0, 1]");

  const HolderReport rep = holder_seminorm(x, y, u, beta);

  ordered_json j = summary_header("holder", ctx);
  ordered_json par;
  par["input"] = args.input;
  par["beta"] = beta;
  if (args.beta <= 0.0) {
    par["p"] = args.p;
    par["q"] = args.q;
  }
  if (from_series) par["snapshot_time"] = sample_time;
  j["parameters"] = par;

  ordered_json pair;
  pair["node_a"] = rep.node_a;
  pair["node_b"] = rep.node_b;
  if (rep.node_a >= 0) {
    pair["x_a"] = x[rep.node_a];
    pair["x_b"] = x[rep.node_b];
    if (!y.empty()) {
      pair["y_a"] = y[rep.node_a];
      pair["y_b"] = y[rep.node_b];
    }
    pair["u_a"] = u[rep.node_a];
    pair["u_b"] = u[rep.node_b];
  }
  j["diagnostics"] = {{"seminorm", rep.seminorm}, {"attaining_pair", pair}};
  write_json_file(artifact_path(ctx, "holder_summary.json"), j);
  return j;
}

nlohmann::ordered_json run_slope(const SlopeArgs& args, const RunContext& ctx) {
  const SeriesData s = read_csv_series(args.input);
  Trajectory traj;
  traj.times = s.times;
  traj.snapshots = s.values;
  const SlopeReport rep = asymptotic_slope(traj, args.window_fraction);

  ordered_json j = summary_header("slope", ctx);
  j["parameters"] = {{"input", args.input},
                     {"window_fraction", args.window_fraction}};
  j["diagnostics"] = {{"slope", rep.slope},
                      {"intercept", rep.intercept},
                      {"samples", rep.samples},
                      {"max_mean_deviation", rep.max_mean_deviation}};
  write_json_file(artifact_path(ctx, "slope_summary.json"), j);
  return j;
}

} // namespace vhj
