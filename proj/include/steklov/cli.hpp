#pragma once

#include <string>
#include <vector>

namespace steklov {

/// Runs the command-line front end. Exit codes: 0 success, 2 invalid
/// configuration or arguments, 3 proven-inequality violation.
int run_cli(const std::vector<std::string>& args);

}  // namespace steklov
