#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sketch2manga/config.hpp"

namespace sketch2manga::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitStageFailure = 1,
  kExitConfigError = 2,
};

/// Parses the arguments of `sketch2manga run` (without the program name and
/// subcommand). A `--config <file>` is read first; flags override its values.
/// Throws ConfigError; CLI11 syntax errors are rethrown as ConfigError too.
PipelineConfig parse_config(const std::vector<std::string>& args);

/// Entry point shared by main() and the tests; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sketch2manga::cli
