#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace singlet {

/// Fixed default master seed so that runs without --seed are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Runs the command-line application. Exit codes: 0 success, 1 usage error,
/// 2 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singlet
