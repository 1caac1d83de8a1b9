#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace voltroute::cli {

// Exit codes: 0 when every asserted bound holds, 1 when one fails, 2 for
// usage, input and I/O errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBoundFailed = 1;
inline constexpr int kExitError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace voltroute::cli
