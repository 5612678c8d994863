#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gyp {

/// Runs one CLI request. args excludes the program name.
/// Returns the process exit code: 0 success, 1 property violation,
/// 2 input error, 3 numerical failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace gyp
