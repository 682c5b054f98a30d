#ifndef PANELFUSION_TOOLS_CLI_H_
#define PANELFUSION_TOOLS_CLI_H_

#include <ostream>

namespace panelfusion {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUsage = 64;

// Runs one subcommand (fuse, validate, report, selftest, synth). Results go
// to `out`, progress and errors to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace panelfusion

#endif  // PANELFUSION_TOOLS_CLI_H_
