#ifndef LEAPFROG_TOOLS_CONFIG_HPP
#define LEAPFROG_TOOLS_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace leapfrog::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Scenario {
    filaments,
    period_table,
    rings,
    kernel_check,
    spectral_check,
    modeone_scan,
    divisor_scan,
};

struct RunConfig {
    Scenario scenario = Scenario::filaments;

    double epsilon = 0.05;
    double kappa = 0.4;
    double lambda = 1.0;

    double dt_tol = 1e-12;
    double n_periods = 3.0;
    double t_end = 0.0; // 0: use n_periods * measured period

    double lambda_min = 0.5, lambda_max = 2.0;
    int lambda_points = 5;
    double kappa_min = 0.2, kappa_max = 1.0;
    int kappa_points = 5;

    int n_snapshots = 5;
    int ncut = 16;
    double tau = 1.5;
    double nu_delta = 0.75;

    std::string output_dir = ".";
    bool svg = true;
    long seed = 1;
};

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);

/// Applies one key=value assignment; throws UsageError naming the key on
/// unknown keys or invalid values.
void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value file with # comments; duplicate keys are rejected.
RunConfig parse_config_file(const std::string& path, Scenario scenario);

/// Subcommand + [--config path] + key=value overrides.
RunConfig parse_command_line(const std::vector<std::string>& args);

} // namespace leapfrog::cli

#endif
