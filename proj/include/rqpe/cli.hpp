#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rqpe/exactmath.hpp"

namespace rqpe {

/// Runs the command line `args` (without the program name). Returns the process
/// exit code: 0 ok, 1 invalid input, 2 verification failure, 3 I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Theta in units of pi printed as "21π/64", "π", "0".
std::string format_pi(const Rational& theta_over_pi);

}  // namespace rqpe
