#pragma once

namespace pbvote {

// Exit codes: 0 success, 2 validation failure (bad arguments, malformed or
// invalid input documents), 3 I/O failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

// Full command-line entry point (subcommands: aggregate, simulate, report,
// fixture). Never reads stdin, never touches the network. The PBVOTE_OUT_DIR
// environment variable, when set, prefixes relative output paths.
int run_main(int argc, const char* const* argv);

}  // namespace pbvote
