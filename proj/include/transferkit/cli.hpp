#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace transferkit {

// Runs the command line (arguments after the program name). Exit codes: 0 on
// success or a positive verdict, 1 on a negative verdict, 2 on bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace transferkit
