#pragma once

#include <ostream>
#include <string>

namespace vhj {

struct AcceptanceOptions {
  std::string out_dir = ".";
  long long seed = 0;
  int only = 0; // 1-11 runs a single criterion, 0 runs the full suite
};

// Runs the acceptance suite, printing one [PASS]/[FAIL] line per criterion
// and writing acceptance_summary.json under out_dir. Returns true when every
// executed criterion passed.
bool run_acceptance(const AcceptanceOptions& opts, std::ostream& os);

} // namespace vhj
