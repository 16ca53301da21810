#ifndef PROBCLUST_TOOLS_CLI_HPP
#define PROBCLUST_TOOLS_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace probclust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `probclust` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 for domain errors (bad data, failed checks),
/// 2 for usage errors (unknown or invalid flags, malformed generator specs).
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace probclust::cli

#endif  // PROBCLUST_TOOLS_CLI_HPP
