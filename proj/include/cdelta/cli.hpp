#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "cdelta/errors.hpp"

namespace cdelta {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,     // syntax, unknown names, invalid parameters, bad files
  kExitCap = 3,       // OrderCapExceeded
  kExitCheckFail = 4, // a check returned a fail verdict
  kExitInternal = 5,  // internal inconsistencies
};

int exit_code_for(ErrorCode code) noexcept;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int execute_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdelta
