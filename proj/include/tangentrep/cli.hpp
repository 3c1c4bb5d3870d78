#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tangentrep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failure or runtime error
inline constexpr int kExitConfig = 2;   // bad flags, config file or field/domain spec

/// Runs one subcommand. args excludes the program name. Artifacts selected by
/// --format go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Entry point for the executable.
int main(int argc, char** argv);

}  // namespace tangentrep::cli
