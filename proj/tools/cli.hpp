#pragma once

// Command-line driver. Configuration is a JSON file (--config); flags given
// on the command line override its values.
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical
// contract violation (positivity/trace), 4 invariant failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace stratafold::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitInvariant = 4;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stratafold::cli
