#pragma once

#include <iosfwd>

namespace hvg::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNoPath = 2 };

/// Full `hvgplan` command line, argv[0] included. Normal output goes to
/// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hvg::cli
