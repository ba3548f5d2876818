#pragma once

namespace orbitkit {

/// Entry point of the command-line tool.  Exit codes: 0 success, 2 usage
/// error, 3 domain error, 4 non-convergence.
int run_cli(int argc, const char* const* argv);

}  // namespace orbitkit
