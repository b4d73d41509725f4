#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rowcover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

inline constexpr double kDefaultDelta = 0.01;
inline constexpr std::uint64_t kDefaultTrials = 10000;
inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr double kDefaultTol = 1e-10;

/// Runs one command. `args` excludes the program name. Records go to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rowcover::cli
