#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vhjlab/acceptance.hpp"
#include "vhjlab/config.hpp"
#include "vhjlab/errors.hpp"
#include "vhjlab/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitAcceptance = 4;

void emit(const nlohmann::ordered_json& j, const vhj::RunContext& ctx) {
  if (!ctx.quiet) std::cout << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the generalized Dirichlet problem of "
               "a viscous Hamilton-Jacobi equation with p-Laplacian diffusion"};
  app.require_subcommand(1);

  vhj::RunContext ctx;
  app.add_option("--out", ctx.out_dir, "directory for artifacts")
      ->capture_default_str();
  app.add_option("--seed", ctx.seed,
                 "RNG seed, recorded in every JSON summary")
      ->capture_default_str();
  app.add_flag("--quiet", ctx.quiet, "suppress the JSON echo on stdout");

  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI config file")
        ->required()
        ->check(CLI::ExistingFile);
  };

  CLI::App* parabolic = app.add_subcommand(
      "solve-parabolic", "march the initial-boundary value problem");
  add_config(parabolic);

  CLI::App* stationary = app.add_subcommand(
      "solve-stationary", "march the discounted problem to steady state");
  add_config(stationary);

  CLI::App* ergodic = app.add_subcommand(
      "ergodic", "vanishing-discount sweep for the ergodic constant");
  add_config(ergodic);

  CLI::App* compare = app.add_subcommand(
      "compare", "order two solves (config) or two trajectory CSVs");
  std::string compare_first, compare_second;
  compare->add_option("--config", config_path,
                      "INI config with [problem] and [problem2]")
      ->check(CLI::ExistingFile);
  compare->add_option("--first", compare_first, "lower trajectory CSV")
      ->check(CLI::ExistingFile);
  compare->add_option("--second", compare_second, "upper trajectory CSV")
      ->check(CLI::ExistingFile);

  CLI::App* barrier = app.add_subcommand(
      "verify-barrier", "calibrate barrier constants and certify margins");
  vhj::BarrierArgs bargs;
  barrier->add_option("--p", bargs.p, "diffusion exponent")->required();
  barrier->add_option("--q", bargs.q, "gradient-growth exponent")->required();
  barrier->add_option("--C", bargs.c_bound, "source bound to certify")
      ->required();
  barrier->add_option("--delta", bargs.delta,
                      "collar width (default: grid collar)");
  barrier->add_option("--lambda", bargs.lambda, "discount coefficient")
      ->capture_default_str();
  barrier->add_option("--domain", bargs.domain, "interval or disc")
      ->capture_default_str();
  barrier->add_option("--a", bargs.a, "interval left endpoint")
      ->capture_default_str();
  barrier->add_option("--b", bargs.b, "interval right endpoint")
      ->capture_default_str();
  barrier->add_option("--radius", bargs.radius, "disc radius")
      ->capture_default_str();
  barrier->add_option("--n", bargs.n, "cells per axis")->capture_default_str();
  barrier->add_option("--samples", bargs.samples,
                      "interior-barrier sample count")
      ->capture_default_str();

  CLI::App* supconv = app.add_subcommand(
      "supconv", "sup-convolve a trajectory CSV in time");
  vhj::SupconvArgs sargs;
  supconv->add_option("input", sargs.input, "trajectory CSV")
      ->required()
      ->check(CLI::ExistingFile);
  supconv->add_option("--alpha", sargs.alpha, "regularization scale in (0, 1]")
      ->required();

  CLI::App* holder = app.add_subcommand(
      "holder", "exact discrete Holder seminorm of a field CSV");
  vhj::HolderArgs hargs;
  holder->add_option("input", hargs.input, "field CSV (or trajectory CSV; "
                     "the last snapshot is used)")
      ->required()
      ->check(CLI::ExistingFile);
  holder->add_option("--beta", hargs.beta, "Holder exponent in (0, 1]");
  holder->add_option("--p", hargs.p, "diffusion exponent for the critical "
                     "exponent (q - p) / (q - p + 1)");
  holder->add_option("--q", hargs.q, "gradient-growth exponent");

  CLI::App* slope = app.add_subcommand(
      "slope", "least-squares slope of the spatial mean over a trailing window");
  vhj::SlopeArgs largs;
  slope->add_option("input", largs.input, "trajectory CSV")
      ->required()
      ->check(CLI::ExistingFile);
  slope->add_option("--window", largs.window_fraction,
                    "trailing fraction of the horizon to fit, in (0, 1)")
      ->capture_default_str();

  CLI::App* acceptance = app.add_subcommand(
      "acceptance", "run the full acceptance suite");
  int only = 0;
  acceptance->add_option("--only", only,
                         "run a single criterion (1-11; 0 = all)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (parabolic->parsed()) {
      emit(vhj::run_solve_parabolic(vhj::ConfigFile::load(config_path), ctx),
           ctx);
    } else if (stationary->parsed()) {
      emit(vhj::run_solve_stationary(vhj::ConfigFile::load(config_path), ctx),
           ctx);
    } else if (ergodic->parsed()) {
      emit(vhj::run_ergodic(vhj::ConfigFile::load(config_path), ctx), ctx);
    } else if (compare->parsed()) {
      if (!config_path.empty()) {
        emit(vhj::run_compare(vhj::ConfigFile::load(config_path), ctx), ctx);
      } else if (!compare_first.empty() && !compare_second.empty()) {
        emit(vhj::run_compare_csv(compare_first, compare_second, ctx), ctx);
      } else {
        throw vhj::ConfigError(
            "compare needs --config, or both --first and --second");
      }
    } else if (barrier->parsed()) {
      emit(vhj::run_verify_barrier(bargs, ctx), ctx);
    } else if (supconv->parsed()) {
      emit(vhj::run_supconv(sargs, ctx), ctx);
    } else if (holder->parsed()) {
      emit(vhj::run_holder(hargs, ctx), ctx);
    } else if (slope->parsed()) {
      emit(vhj::run_slope(largs, ctx), ctx);
    } else if (acceptance->parsed()) {
      vhj::AcceptanceOptions opts;
      opts.out_dir = ctx.out_dir;
      opts.seed = ctx.seed;
      opts.only = only;
      return vhj::run_acceptance(opts, std::cout) ? 0 : kExitAcceptance;
    }
  } catch (const vhj::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const vhj::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
