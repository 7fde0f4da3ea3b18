#pragma once

#include <ostream>

namespace majorant::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;  // e.g. divergence where convergence was required
inline constexpr int kExitUsage = 2;   // bad flags, unreadable or invalid spec

/// Runs one CLI invocation; primary output goes to `out` unless --out is
/// given, diagnostics go to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace majorant::cli
