#pragma once

#include <ostream>
#include <span>
#include <string>

#include "darl/error.hpp"

namespace darl::cli {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitUsage = 2,       ///< bad flags or invalid input values
  kExitIo = 3,          ///< unreadable input or unwritable output
  kExitNumerical = 4,   ///< numerically degenerate input
};

int exit_code_for(ErrorCode code) noexcept;

/// Runs `darl <args...>` (args exclude the program name). All primary output
/// goes to `out`; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace darl::cli
