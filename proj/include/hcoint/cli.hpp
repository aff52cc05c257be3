#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hcoint/error.hpp"

namespace hcoint {

/// 0 PASS, 1 I/O or schema error, 2 finite-type FAIL, 3 numerical failure.
enum ExitCode : int { kExitPass = 0, kExitIo = 1, kExitFail = 2, kExitNumeric = 3 };

[[nodiscard]] int exit_code_for(ErrorCode code) noexcept;

/// Entry point of the hcoint tool; `args` excludes the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hcoint
