#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace muntz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one invocation; args excludes the program name. Results go to `out`
/// (or to --out), diagnostics to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace muntz::cli
