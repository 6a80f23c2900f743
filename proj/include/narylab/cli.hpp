#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace narylab::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns 0, 1 or 2 as documented in the README.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace narylab::cli
