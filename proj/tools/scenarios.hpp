#ifndef LEAPFROG_TOOLS_SCENARIOS_HPP
#define LEAPFROG_TOOLS_SCENARIOS_HPP

#include "config.hpp"

namespace leapfrog::cli {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

/// Dispatches the scenario; returns the process exit code. Emitted files are
/// listed on stdout; check failures produce JSON-lines reports on stdout.
int run_scenario(const RunConfig& cfg);

} // namespace leapfrog::cli

#endif
