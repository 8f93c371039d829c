#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptgp/cli/config.hpp"
#include "ptgp/cli/output.hpp"

namespace ptgp::cli {

enum ExitCode { kExitOk = 0, kExitFailed = 1, kExitPhysics = 2, kExitConfig = 3 };

struct CommandOutput {
  std::string text;      // main artifact (table or report)
  std::string critical;  // igp-scan: detected critical points
  int exit_code = kExitOk;
};

CommandOutput cmd_check(const RunConfig& cfg);
CommandOutput cmd_phases(const RunConfig& cfg);
CommandOutput cmd_igp_scan(const RunConfig& cfg);
CommandOutput cmd_critical(const RunConfig& cfg);
CommandOutput cmd_oracle(const RunConfig& cfg);
CommandOutput cmd_evolve(const RunConfig& cfg);

const std::vector<std::string>& command_names();

// Runs a command, writes its artifacts (to cfg.output.path or `out`), and maps
// exceptions to exit codes with a message on `err`.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

int exit_code_for(const std::exception& e);

}  // namespace ptgp::cli
