#pragma once

#include <ostream>

namespace pellsu::cli {

// Exit codes.
inline constexpr int kOk = 0;        // success, verdict Holds, no findings
inline constexpr int kFindings = 1;  // findings or a counterexample present
inline constexpr int kError = 2;     // usage or computation error

// Runs one command line (argv[0] is the program name).
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pellsu::cli
