#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsp {

// Exit codes besides 0 (success).
inline constexpr int kExitValidation = 2;
inline constexpr int kExitUsage = 64;   // unknown or missing verb
inline constexpr int kExitFormat = 65;  // malformed input file
inline constexpr int kExitFailure = 70;  // iteration cap or internal error

// Runs one command. `args` excludes the program name. A JSON summary goes to
// `out` on success, a message to `err` on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsp
