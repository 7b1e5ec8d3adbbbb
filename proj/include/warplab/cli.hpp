#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace warplab {

const char* version();

/// Runs the command-line tool. Exit codes: 0 success, 1 an inequality was violated
/// (or a trace lost monotonicity), 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace warplab
