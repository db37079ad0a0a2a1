#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgfmix::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

// Runs one subcommand. `args` excludes the program name. Results go to `out`
// (or the --out file), one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pgfmix::cli
