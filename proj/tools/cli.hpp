#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypflow::cli {

/// Runs one command line (without the program name). Data goes to `out` unless
/// --output is given; diagnostics go to `err`. Returns 0 on success, 1 on bad
/// parameters or usage, 2 on numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypflow::cli
