#pragma once

#include <iosfwd>

namespace tpro {

// Process exit codes. Config errors use ConfigError::exit_code() (10..14).
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitPartialSweep = 2,
  kExitIo = 3,
  kExitNumeric = 20,
};

/// Full command-line entry point; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace tpro
