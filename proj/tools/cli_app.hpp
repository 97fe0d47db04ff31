#pragma once

namespace tvlm::cli {

// Entry point shared by the binary and the tests.
// Exit codes: 0 success (possibly with flagged points), 2 configuration
// error, 3 data error, 4 numerical precision error.
int run(int argc, const char* const* argv);

}  // namespace tvlm::cli
