#pragma once

// Command layer behind the ohphase binary. The functions are exposed so the
// test suites can drive them without spawning processes.
//
// Exit codes: 0 ok, 2 config error, 3 tracking failure (partial output kept
// with a .partial suffix), 4 verification failure.

#include <iosfwd>
#include <string>
#include <vector>

#include "ohphase/config.hpp"

namespace ohphase::cli {

struct VerifyCheck {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  std::vector<std::string> advisories;
  bool all_pass() const;
};

// Representative rotation rate for single-point checks (sweep-range middle).
double verify_omega(const RunConfig& cfg);

VerifyReport run_verify(const RunConfig& cfg, int threads);

int cmd_sweep(const RunConfig& cfg, int threads, std::ostream& diag);
int cmd_critical(const RunConfig& cfg, int threads, std::ostream& out,
                 std::ostream& diag);
int cmd_verify(const RunConfig& cfg, int threads, std::ostream& out,
               std::ostream& diag);

int run_cli(int argc, char** argv);

}  // namespace ohphase::cli
