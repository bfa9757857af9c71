#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wbr {

// Runs the command-line surface. Exit codes: 0 success, 1 verification
// failure, 2 usage or input error. Every verb is pure: identical inputs
// produce byte-identical outputs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wbr
