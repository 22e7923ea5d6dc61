#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace redundancy {

/// Runs the command-line front end. `args` excludes the program name.
/// Returns the process exit code: 0 success, 1 numerical failure,
/// 2 usage error, 3 requested method unavailable.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redundancy
