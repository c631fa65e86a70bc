#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace psep::cli {

/// Runs the command line `args` (program name excluded). Returns the exit
/// code: 0 success, 1 a failed verification, 2 a usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psep::cli
