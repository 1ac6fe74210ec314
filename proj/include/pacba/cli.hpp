#pragma once

#include <iosfwd>

namespace pacba {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;  // usage, parse or validation error
inline constexpr int kExitIo = 3;       // unreadable or unwritable file, storage failure

/// Entry point of the `pacba` tool; writes to the given streams only.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pacba
