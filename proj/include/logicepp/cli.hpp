#pragma once

namespace logicepp {

/// Entry point behind the command-line tool. Returns 0 on success, 1 on a
/// validation/usage error, 2 on an internal invariant violation.
int run_cli(int argc, const char* const* argv);

}  // namespace logicepp
