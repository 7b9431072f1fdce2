#pragma once

#include <iosfwd>

namespace robotsp::cli {

/// Exit codes: 0 success or MATCH, 1 failure or MISMATCH, 2 usage error or
/// guard refusal (oracle only).
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Entry point of the `robotsp` tool: generate | solve | oracle | benchmark.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace robotsp::cli
