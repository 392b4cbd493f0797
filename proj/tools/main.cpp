#include "config.hpp"
#include "scenarios.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace {

void print_usage()
{
    std::printf(
        "usage: leapfrog <scenario> [--config <path>] [key=value ...]\n"
        "\n"
        "scenarios:\n"
        "  filaments       integrate the filament pair, emit trajectory CSV + SVGs\n"
        "  period          closed-form vs measured period table over a (lambda,kappa) grid\n"
        "  rings           ring-boundary snapshots over one period (CSV + SVGs)\n"
        "  kernel-check    kernel expansion and harmonicity checks\n"
        "  spectral-check  multiplier, Hilbert and integral-identity checks\n"
        "  modeone         non-resonance scan over lambda (CSV)\n"
        "  divisors        small-divisor admissibility scan over lambda (CSV)\n"
        "\n"
        "common keys: epsilon kappa lambda dt_tol n_periods output_dir svg seed\n"
        "sweep keys:  lambda_min lambda_max lambda_points kappa_min kappa_max kappa_points\n"
        "other keys:  t_end n_snapshots ncut tau nu_delta\n"
        "\n"
        "exit codes: 0 ok, 1 check failure, 2 usage error, 3 numerical failure\n");
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "-h" || args[0] == "--help" || args[0] == "help") {
        print_usage();
        return args.empty() ? leapfrog::cli::kExitUsage : leapfrog::cli::kExitOk;
    }
    try {
        const auto cfg = leapfrog::cli::parse_command_line(args);
        return leapfrog::cli::run_scenario(cfg);
    } catch (const leapfrog::cli::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return leapfrog::cli::kExitUsage;
    }
}
