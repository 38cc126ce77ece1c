#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccdec/types.hpp"

namespace ccdec {

/// Exit status for a library error: 1 input/usage, 2 axiom violation,
/// 3 not thick, 4 not a parabolic, 5 internal failure.
int exit_code(ErrorCode code);

/// Runs one ccdec command; `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace ccdec
