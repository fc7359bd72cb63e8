#pragma once

#include <iosfwd>

namespace rotorkit::cli {

/// Full command dispatch; returns the process exit code
/// (0 = YES/success, 1 = NO, 2 = error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace rotorkit::cli
