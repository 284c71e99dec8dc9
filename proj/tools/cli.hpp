#pragma once

#include <ostream>

namespace madelung::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,    // bad flags, config or domain
  kExitFailure = 3,  // a verification or analysis check failed
};

// Entry point of madelung-cli with injectable streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace madelung::cli
