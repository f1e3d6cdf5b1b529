#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "sasakilab/config.hpp"

namespace sasakilab {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitNumerical = 3 };

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string text;
};

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_decompose(const RunConfig& cfg);
CommandResult cmd_classify_flow(const RunConfig& cfg);

/// Full command line: parses flags and the optional config file, dispatches,
/// writes the report to `out` and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sasakilab
