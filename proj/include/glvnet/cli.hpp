#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glvnet::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kIoError = 3;

/// Runs one subcommand. `args` excludes the program name. Every run writes
/// its resolved configuration and seed as one JSON line to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv);

}  // namespace glvnet::cli
