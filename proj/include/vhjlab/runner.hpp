#pragma once

#include <string>

#include <json.hpp>

#include "vhjlab/config.hpp"

namespace vhj {

// Shared plumbing for the command-line subcommands: each runner consumes a
// validated config, writes its artifacts under out_dir, and returns the JSON
// summary that was also written to disk.

struct RunContext {
  std::string out_dir = ".";
  long long seed = 0;   // recorded for provenance; the solvers are deterministic
  bool quiet = false;
};

nlohmann::ordered_json run_solve_parabolic(const ConfigFile& cfg,
                                           const RunContext& ctx);
nlohmann::ordered_json run_solve_stationary(const ConfigFile& cfg,
                                            const RunContext& ctx);
nlohmann::ordered_json run_ergodic(const ConfigFile& cfg, const RunContext& ctx);
nlohmann::ordered_json run_compare(const ConfigFile& cfg, const RunContext& ctx);
// Compare two already-computed trajectory CSVs (same grid, same times).
nlohmann::ordered_json run_compare_csv(const std::string& first,
                                       const std::string& second,
                                       const RunContext& ctx);

struct BarrierArgs {
  double p = 2.0;
  double q = 3.0;
  double c_bound = 1.0;
  double delta = 0.0; // <= 0: grid default
  double lambda = 1.0;
  std::string domain = "interval";
  double a = 0.0, b = 1.0, radius = 1.0;
  int n = 128;
  int samples = 2000;
};
nlohmann::ordered_json run_verify_barrier(const BarrierArgs& args,
                                          const RunContext& ctx);

struct SupconvArgs {
  std::string input;
  double alpha = 0.5;
};
nlohmann::ordered_json run_supconv(const SupconvArgs& args,
                                   const RunContext& ctx);

struct HolderArgs {
  std::string input;
  double beta = 0.0; // used when > 0
  double p = 0.0, q = 0.0; // otherwise beta_exponent(p, q)
};
nlohmann::ordered_json run_holder(const HolderArgs& args,
                                  const RunContext& ctx);

struct SlopeArgs {
  std::string input;
  double window_fraction = 0.5;
};
nlohmann::ordered_json run_slope(const SlopeArgs& args, const RunContext& ctx);

// Number of worker threads for batch property runs: VHJLAB_THREADS when set
// (clamped to [1, 64]), else hardware concurrency capped at 8.
int thread_count();

} // namespace vhj
