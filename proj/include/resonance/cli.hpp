#pragma once

#include <iosfwd>

namespace resonance {

/// Exit codes: 0 success, 1 failed check or run, 2 bad configuration.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace resonance
