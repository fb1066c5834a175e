#pragma once

#include <ostream>

namespace mocorr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
  kExitCheckFailed = 3,
};

/// Parses argv and runs one subcommand. Reports go to `out` when --out is
/// "-" (the default); diagnostics and status lines go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mocorr::cli
