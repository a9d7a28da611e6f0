#pragma once

// Command-line front end. Every subcommand prints a JSON report
//   {"command": ..., "parameters": ..., "result": ..., "version": ...}
// to stdout, or to the file named by --out (render writes its image there
// and the report to stdout).
//
// Exit codes: 0 success, 1 domain error, 2 usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace ccslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

}  // namespace ccslab::cli
