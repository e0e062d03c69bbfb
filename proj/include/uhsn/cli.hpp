#pragma once

#include <ostream>

namespace uhsn::cli {

// Exit codes: 0 success, 1 property violation / flow failure, 2 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

// Subcommands: handshake, e2e, costs, attack, vectors. Reports go to
// --output or `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uhsn::cli
