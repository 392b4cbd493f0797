#include "config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>

namespace leapfrog::cli {

namespace {

double parse_real(const std::string& key, const std::string& value)
{
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw UsageError("invalid numeric value for key '" + key + "': " + value);
    return x;
}

long parse_int(const std::string& key, const std::string& value)
{
    errno = 0;
    char* end = nullptr;
    const long x = std::strtol(value.c_str(), &end, 10);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw UsageError("invalid integer value for key '" + key + "': " + value);
    return x;
}

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw UsageError(msg);
}

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

} // namespace

Scenario scenario_from_name(const std::string& name)
{
    if (name == "filaments")
        return Scenario::filaments;
    if (name == "period" || name == "period-table")
        return Scenario::period_table;
    if (name == "rings")
        return Scenario::rings;
    if (name == "kernel-check")
        return Scenario::kernel_check;
    if (name == "spectral-check")
        return Scenario::spectral_check;
    if (name == "modeone" || name == "modeone-scan")
        return Scenario::modeone_scan;
    if (name == "divisors" || name == "divisor-scan")
        return Scenario::divisor_scan;
    throw UsageError("unknown scenario '" + name + "'");
}

std::string scenario_name(Scenario s)
{
    switch (s) {
    case Scenario::filaments: return "filaments";
    case Scenario::period_table: return "period-table";
    case Scenario::rings: return "rings";
    case Scenario::kernel_check: return "kernel-check";
    case Scenario::spectral_check: return "spectral-check";
    case Scenario::modeone_scan: return "modeone-scan";
    case Scenario::divisor_scan: return "divisor-scan";
    }
    return "?";
}

void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "scenario") {
        cfg.scenario = scenario_from_name(value);
    } else if (key == "epsilon") {
        cfg.epsilon = parse_real(key, value);
        require(cfg.epsilon > 0.0 && cfg.epsilon < 1.0, "epsilon must be in (0,1)");
    } else if (key == "kappa") {
        cfg.kappa = parse_real(key, value);
        require(cfg.kappa > 0.0, "kappa must be positive");
    } else if (key == "lambda") {
        cfg.lambda = parse_real(key, value);
        require(cfg.lambda > 0.0, "lambda must be positive");
    } else if (key == "dt_tol") {
        cfg.dt_tol = parse_real(key, value);
        require(cfg.dt_tol > 0.0, "dt_tol must be positive");
    } else if (key == "n_periods") {
        cfg.n_periods = parse_real(key, value);
        require(cfg.n_periods > 0.0, "n_periods must be positive");
    } else if (key == "t_end") {
        cfg.t_end = parse_real(key, value);
        require(cfg.t_end >= 0.0, "t_end must be nonnegative");
    } else if (key == "lambda_min") {
        cfg.lambda_min = parse_real(key, value);
        require(cfg.lambda_min > 0.0, "lambda_min must be positive");
    } else if (key == "lambda_max") {
        cfg.lambda_max = parse_real(key, value);
        require(cfg.lambda_max > 0.0, "lambda_max must be positive");
    } else if (key == "lambda_points") {
        cfg.lambda_points = int(parse_int(key, value));
        require(cfg.lambda_points >= 1, "lambda_points must be >= 1");
    } else if (key == "kappa_min") {
        cfg.kappa_min = parse_real(key, value);
        require(cfg.kappa_min > 0.0, "kappa_min must be positive");
    } else if (key == "kappa_max") {
        cfg.kappa_max = parse_real(key, value);
        require(cfg.kappa_max > 0.0, "kappa_max must be positive");
    } else if (key == "kappa_points") {
        cfg.kappa_points = int(parse_int(key, value));
        require(cfg.kappa_points >= 1, "kappa_points must be >= 1");
    } else if (key == "n_snapshots") {
        cfg.n_snapshots = int(parse_int(key, value));
        require(cfg.n_snapshots >= 1, "n_snapshots must be >= 1");
    } else if (key == "ncut") {
        cfg.ncut = int(parse_int(key, value));
        require(cfg.ncut >= 1, "ncut must be >= 1");
    } else if (key == "tau") {
        cfg.tau = parse_real(key, value);
        require(cfg.tau > 0.0, "tau must be positive");
    } else if (key == "nu_delta") {
        cfg.nu_delta = parse_real(key, value);
    } else if (key == "output_dir") {
        require(!value.empty(), "output_dir must be nonempty");
        cfg.output_dir = value;
    } else if (key == "svg") {
        require(value == "0" || value == "1", "svg must be 0 or 1");
        cfg.svg = value == "1";
    } else if (key == "seed") {
        cfg.seed = parse_int(key, value);
    } else {
        throw UsageError("unknown key '" + key + "'");
    }
}

RunConfig parse_config_file(const std::string& path, Scenario scenario)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("config file not found: " + path);
    RunConfig cfg;
    cfg.scenario = scenario;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no)
                             + " is not key=value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw UsageError("duplicate key '" + key + "' in " + path);
        apply_assignment(cfg, key, value);
    }
    return cfg;
}

RunConfig parse_command_line(const std::vector<std::string>& args)
{
    if (args.empty())
        throw UsageError("missing scenario subcommand");
    const Scenario scenario = scenario_from_name(args[0]);

    RunConfig cfg;
    cfg.scenario = scenario;
    std::size_t i = 1;
    if (i < args.size() && args[i] == "--config") {
        if (i + 1 >= args.size())
            throw UsageError("--config requires a path");
        cfg = parse_config_file(args[i + 1], scenario);
        i += 2;
    }
    std::set<std::string> seen;
    for (; i < args.size(); ++i) {
        const auto eq = args[i].find('=');
        if (eq == std::string::npos)
            throw UsageError("expected key=value override, got '" + args[i] + "'");
        const std::string key = args[i].substr(0, eq);
        if (!seen.insert(key).second)
            throw UsageError("duplicate key '" + key + "' among overrides");
        if (key == "scenario")
            throw UsageError("scenario is fixed by the subcommand");
        apply_assignment(cfg, key, args[i].substr(eq + 1));
    }
    return cfg;
}

} // namespace leapfrog::cli
