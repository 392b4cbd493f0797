#include "scenarios.hpp"

#include "leapfrog/contour.hpp"
#include "leapfrog/filaments.hpp"
#include "leapfrog/fourier.hpp"
#include "leapfrog/gauss.hpp"
#include "leapfrog/integrals.hpp"
#include "leapfrog/io.hpp"
#include "leapfrog/kernel.hpp"
#include "leapfrog/modeone.hpp"
#include "leapfrog/parallel.hpp"
#include "leapfrog/specfun.hpp"
#include "leapfrog/transport.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>

namespace leapfrog::cli {

namespace {

using nlohmann::json;

struct CheckSet {
    std::string scenario;
    bool all_ok = true;

    void check(const std::string& name, double value, double threshold)
    {
        const bool ok = value < threshold;
        all_ok = all_ok && ok;
        if (ok) {
            std::printf("[PASS] %s: %.3e < %.3e\n", name.c_str(), value, threshold);
        } else {
            json line{{"event", "check_failure"},
                      {"scenario", scenario},
                      {"check", name},
                      {"value", value},
                      {"threshold", threshold}};
            std::cout << line.dump() << "\n";
        }
    }

    void check_window(const std::string& name, double value, double lo, double hi)
    {
        const bool ok = value > lo && value < hi;
        all_ok = all_ok && ok;
        if (ok) {
            std::printf("[PASS] %s: %.3f in (%.2f, %.2f)\n", name.c_str(), value, lo, hi);
        } else {
            json line{{"event", "check_failure"},
                      {"scenario", scenario},
                      {"check", name},
                      {"value", value},
                      {"window_lo", lo},
                      {"window_hi", hi}};
            std::cout << line.dump() << "\n";
        }
    }
};

void announce(const std::string& path)
{
    std::printf("wrote %s\n", path.c_str());
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v;
    if (n == 1) {
        v.push_back(a);
        return v;
    }
    for (int i = 0; i < n; ++i)
        v.push_back(a + (b - a) * double(i) / double(n - 1));
    return v;
}

int run_filaments(const RunConfig& cfg)
{
    using namespace filaments;
    const PhysicalParams p(cfg.epsilon, cfg.kappa, cfg.lambda);
    const double T = measure_period(p, Model::perturbed, cfg.dt_tol);
    const double t_end = cfg.t_end > 0.0 ? cfg.t_end : cfg.n_periods * T;
    std::printf("period T = %.12g, integrating to t = %.12g\n", T, t_end);

    const auto traj = integrate_physical(initial_condition(p), p, t_end, cfg.dt_tol);
    const double U = drift_speed(p, T, cfg.dt_tol);
    std::printf("drift speed U = %.12g\n", U);

    const std::string csv = cfg.output_dir + "/trajectory.csv";
    export_trajectory_csv(csv, traj);
    announce(csv);

    if (cfg.svg) {
        io::Polyline ring1, ring2;
        ring1.color = "#2a9d2a";
        ring2.color = "#1f6fb2";
        io::Polyline ring1_t = ring1, ring2_t = ring2;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double t = traj.times[i];
            ring1.points.push_back({traj.states[i][1], traj.states[i][0]});
            ring2.points.push_back({traj.states[i][3], traj.states[i][2]});
            ring1_t.points.push_back({traj.states[i][1] - U * t, traj.states[i][0]});
            ring2_t.points.push_back({traj.states[i][3] - U * t, traj.states[i][2]});
        }
        const std::string lab = cfg.output_dir + "/filaments_lab.svg";
        io::write_svg(lab, {ring1, ring2});
        announce(lab);
        const std::string trans = cfg.output_dir + "/filaments_translating.svg";
        io::write_svg(trans, {ring1_t, ring2_t});
        announce(trans);
    }

    CheckSet checks{scenario_name(cfg.scenario)};
    double sum_drift = 0.0, H_drift = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        sum_drift = std::max(sum_drift, std::abs(traj.logs[i][1] - traj.logs[0][1]));
        H_drift = std::max(H_drift,
                           std::abs(traj.logs[i][0] - traj.logs[0][0])
                               / std::abs(traj.logs[0][0]));
    }
    checks.check("sum_rho_drift", sum_drift, 1e-10);
    checks.check("relative_H_drift", H_drift, 1e-8);

    // translating-frame closure over whole periods
    const int periods = std::max(1, int(t_end / T));
    const FilamentPair P0 = initial_condition(p);
    const FilamentPair PT = flow_physical(P0, p, 0.0, periods * T, cfg.dt_tol);
    const double closure = std::hypot(
        std::hypot(PT.P1.rho - P0.P1.rho, PT.P1.z - periods * T * U - P0.P1.z),
        std::hypot(PT.P2.rho - P0.P2.rho, PT.P2.z - periods * T * U - P0.P2.z));
    checks.check("translating_frame_closure", closure, 1e-4);

    return checks.all_ok ? kExitOk : kExitCheckFailure;
}

int run_period_table(const RunConfig& cfg)
{
    using namespace filaments;
    const auto lambdas = linspace(cfg.lambda_min, cfg.lambda_max, cfg.lambda_points);
    const auto kappas = linspace(cfg.kappa_min, cfg.kappa_max, cfg.kappa_points);

    struct Cell {
        double lambda, kappa, T0, T_meas, rel;
    };
    std::vector<Cell> cells(lambdas.size() * kappas.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
        const double lambda = lambdas[idx / kappas.size()];
        const double kappa = kappas[idx % kappas.size()];
        const PhysicalParams p(std::min(cfg.epsilon, 0.05), kappa, lambda);
        const double T0 = period_T0(lambda, kappa);
        const double T = measure_period(p, Model::limiting, cfg.dt_tol);
        cells[idx] = {lambda, kappa, T0, T, std::abs(T - T0) / T0};
    });

    std::vector<std::vector<double>> rows;
    double worst = 0.0;
    for (const auto& c : cells) {
        rows.push_back({c.lambda, c.kappa, c.T0, c.T_meas, c.rel});
        worst = std::max(worst, c.rel);
    }
    const std::string csv = cfg.output_dir + "/period_table.csv";
    io::write_csv(csv, {"lambda", "kappa", "T0", "T_measured", "rel_diff"}, rows);
    announce(csv);

    CheckSet checks{scenario_name(cfg.scenario)};
    checks.check("max_relative_period_mismatch", worst, 1e-6);

    // closed-form bounds and monotonicity on a denser grid
    bool bounds_ok = true, monotone_ok = true;
    for (double kappa : linspace(cfg.kappa_min, cfg.kappa_max, 20)) {
        double prev = 0.0;
        for (double lambda : linspace(cfg.lambda_min, cfg.lambda_max, 20)) {
            const double alpha = lambda * lambda / (8.0 * kappa);
            const double T0 = period_T0(lambda, kappa);
            bounds_ok = bounds_ok
                && T0 > 2.0 * M_PI * lambda * lambda / std::sqrt(1.0 + alpha)
                && T0 < 2.0 * M_PI * lambda * lambda * std::exp(0.5 * alpha);
            monotone_ok = monotone_ok && T0 > prev;
            prev = T0;
        }
    }
    checks.check("period_bounds_violations", bounds_ok ? 0.0 : 1.0, 0.5);
    checks.check("period_monotonicity_violations", monotone_ok ? 0.0 : 1.0, 0.5);
    return checks.all_ok ? kExitOk : kExitCheckFailure;
}

int run_rings(const RunConfig& cfg)
{
    using namespace contour;
    const filaments::PhysicalParams p(cfg.epsilon, cfg.kappa, cfg.lambda);
    const filaments::OrbitPhi orbit(p, 1024, cfg.dt_tol);
    const spectral::Fourier2 h0 = approx_profile_h0_series(orbit);
    const RingShape shape{cfg.epsilon, h0};

    std::vector<std::vector<double>> rows;
    const int n_theta = 128;
    for (int snap = 0; snap < cfg.n_snapshots; ++snap) {
        const double phi = 2.0 * M_PI * double(snap) / cfg.n_snapshots;
        const double tau = orbit.period() * phi / (2.0 * M_PI);
        io::Polyline b1, b2;
        b1.color = "#2a9d2a";
        b2.color = "#1f6fb2";
        b1.closed = b2.closed = true;
        for (int i = 0; i < n_theta; ++i) {
            const double theta = 2.0 * M_PI * i / n_theta;
            const auto g1 = boundary_gamma(orbit, shape, 1, phi, theta);
            const auto g2 = boundary_gamma(orbit, shape, 2, phi, theta);
            rows.push_back({tau, theta, g1.x, g1.y, 1.0});
            rows.push_back({tau, theta, g2.x, g2.y, 2.0});
            b1.points.push_back({g1.y, g1.x});
            b2.points.push_back({g2.y, g2.x});
        }
        if (cfg.svg) {
            const std::string svg =
                cfg.output_dir + "/rings_" + std::to_string(snap) + ".svg";
            io::write_svg(svg, {b1, b2});
            announce(svg);
        }
    }
    const std::string csv = cfg.output_dir + "/ring_boundaries.csv";
    io::write_csv(csv, {"tau", "theta", "x", "y", "ring_id"}, rows);
    announce(csv);
    return kExitOk;
}

int run_kernel_check(const RunConfig& cfg)
{
    using kernel::Arg;
    using kernel::HalfPlanePoint;
    using kernel::Vec2;
    CheckSet checks{scenario_name(cfg.scenario)};

    // J-function block
    checks.check("J_ode_residual_s1", specfun::check_J_ode(1.0), 1e-5);
    checks.check("J_ode_residual_s01", specfun::check_J_ode(0.1), 1e-4);
    checks.check("J_ode_residual_s10", specfun::check_J_ode(10.0), 1e-6);
    checks.check("J_series_B0_error",
                 std::abs(specfun::eval_J_series(1.0, 0) - (std::log(8.0) - 2.0)), 1e-15);

    // harmonicity on a well-separated grid
    double worst = 0.0;
    for (double rho = 0.5; rho <= 1.4; rho += 0.1)
        for (double z = 0.0; z <= 0.9; z += 0.1)
            worst = std::max(worst, kernel::check_harmonic({rho, z}, {2.5, 2.0}, 1e-4));
    checks.check("harmonicity_residual", worst, 1e-5);

    // expansion ratio windows at the acceptance epsilons
    const HalfPlanePoint Z{1.0, 0.0};
    const Vec2 X{0.6, -0.2}, Y{-0.5, 0.4};
    auto plain_err = [&](double e) {
        const HalfPlanePoint a{Z.rho + e * X.x, Z.z + e * X.y};
        const HalfPlanePoint b{Z.rho + e * Y.x, Z.z + e * Y.y};
        return std::abs(kernel::eval_G(a, b) - kernel::expand_G_plain(Z, X, Y, e));
    };
    auto aniso_err = [&](double e) {
        return std::abs(kernel::eval_G(kernel::aniso_point(Z, X, e),
                                       kernel::aniso_point(Z, Y, e))
                        - kernel::expand_G_anisotropic(Z, X, Y, e));
    };
    auto grad_err = [&](double e) {
        const Vec2 g = kernel::grad_G(kernel::aniso_point(Z, X, e),
                                      kernel::aniso_point(Z, Y, e), Arg::first);
        const Vec2 x = kernel::expand_grad_G(Z, X, Y, e);
        return std::hypot(g.x - x.x, g.y - x.y);
    };
    checks.check_window("plain_ratio_1e-2", plain_err(1e-2) / plain_err(5e-3), 6.0, 10.0);
    checks.check_window("plain_ratio_5e-3", plain_err(5e-3) / plain_err(2.5e-3), 6.0, 10.0);
    checks.check_window("aniso_ratio_1e-2", aniso_err(1e-2) / aniso_err(5e-3), 6.0, 10.0);
    checks.check_window("aniso_ratio_5e-3", aniso_err(5e-3) / aniso_err(2.5e-3), 6.0, 10.0);
    checks.check_window("grad_ratio_1e-2", grad_err(1e-2) / grad_err(5e-3), 3.4, 5.0);
    checks.check_window("grad_ratio_5e-3", grad_err(5e-3) / grad_err(2.5e-3), 3.4, 5.0);

    // kernel symmetry on a seeded sample
    std::mt19937_64 rng(std::uint64_t(cfg.seed));
    std::uniform_real_distribution<double> rho(0.1, 3.0), zz(-2.0, 2.0);
    double sym = 0.0;
    for (int i = 0; i < 200; ++i) {
        HalfPlanePoint a{rho(rng), zz(rng)}, b{rho(rng), zz(rng)};
        if (std::abs(a.rho - b.rho) + std::abs(a.z - b.z) < 1e-6)
            continue;
        sym = std::max(sym, std::abs(kernel::eval_G(a, b) - kernel::eval_G(b, a)));
    }
    checks.check("kernel_symmetry", sym, 1e-11);
    return checks.all_ok ? kExitOk : kExitCheckFailure;
}

int run_spectral_check(const RunConfig& cfg)
{
    using spectral::FourierSeries;
    CheckSet checks{scenario_name(cfg.scenario)};

    // Lambda_2 eigenvalues (sign convention of the multiplier table)
    double worst = 0.0;
    for (int j = 2; j <= 10; ++j)
        worst = std::max(worst,
                         std::abs(-spectral::Inm(2, j)
                                  - 1.0 / (4.0 * (j * j - 1.0) * j)));
    checks.check("lambda2_eigenvalues", worst, 1e-10);

    // Hilbert transform vs PV quadrature on trig polynomials to mode 8
    worst = 0.0;
    for (int mode = 1; mode <= 8; ++mode) {
        const FourierSeries f = FourierSeries::cosine(mode);
        const FourierSeries Hf = spectral::hilbert(f);
        const FourierSeries fp = f.derivative();
        for (double theta : {0.3, 1.9}) {
            const int n = 2048;
            double pv = 2.0 * fp.eval(theta);
            for (int k = 1; k < n; ++k) {
                const double eta = theta + 2.0 * M_PI * k / n;
                pv += (f.eval(eta) - f.eval(theta)) / std::tan(0.5 * (eta - theta));
            }
            worst = std::max(worst, std::abs(pv / n - Hf.eval(theta)));
        }
    }
    checks.check("hilbert_pv_agreement", worst, 1e-8);

    // Appendix integral identities
    worst = 0.0;
    for (const auto& r : spectral::integral_identities(2))
        worst = std::max(worst, r.deviation);
    checks.check("disk_integral_identities", worst, 1e-6);

    // operator mode tables vs defining integrals
    const double p11 = 0.4;
    const double g3 = 0.125 * std::pow(2.0 * p11, -0.75);
    const FourierSeries a = spectral::op_S(FourierSeries::cosine(1), g3).derivative();
    const FourierSeries b = spectral::op_Hu0(FourierSeries::cosine(1),
                                             std::pow(2.0 * p11, -0.75));
    worst = std::abs(a.sin_coeff(2) - g3);
    worst = std::max(worst, std::abs(b.sin_coeff(2) + 3.0 * g3));
    const spectral::ModeOneCouplings cpl{p11, 0.01, 0.02, -0.03, 0.04};
    const FourierSeries qc =
        spectral::op_Q(FourierSeries::cosine(1), FourierSeries::sine(1), cpl).derivative();
    worst = std::max(worst,
                     std::abs(qc.sin_coeff(1)
                              - (std::pow(2.0 * p11, -1.5) / 16.0 + cpl.q2)));
    checks.check("operator_mode_tables", worst, 1e-8);
    return checks.all_ok ? kExitOk : kExitCheckFailure;
}

int run_modeone_scan(const RunConfig& cfg)
{
    const auto rows =
        modeone::scan_table(cfg.kappa, cfg.lambda_min, cfg.lambda_max,
                            std::max(2, cfg.lambda_points), 512);
    std::vector<std::vector<double>> csv_rows;
    for (const auto& r : rows)
        csv_rows.push_back({r.lambda, cfg.kappa, r.P_value, r.bracket ? 1.0 : 0.0});
    const std::string csv = cfg.output_dir + "/modeone_scan.csv";
    io::write_csv(csv, {"lambda", "kappa", "P_value", "bracket"}, csv_rows);
    announce(csv);

    CheckSet checks{scenario_name(cfg.scenario)};
    const auto c = modeone::build_coefficients(rows.front().lambda, cfg.kappa, 512);
    checks.check("invert_residual", modeone::invert_IminusT(c.rho1, c).residual, 1e-10);
    return checks.all_ok ? kExitOk : kExitCheckFailure;
}

int run_divisor_scan(const RunConfig& cfg)
{
    const double eps = cfg.epsilon;
    const double L = std::abs(std::log(eps));
    const double eps1 = eps * eps * L;
    const double nu = std::min(1.0, eps * eps * std::pow(L, cfg.nu_delta));
    const spectral::DiophantineParams dio{nu, cfg.tau, cfg.ncut};
    const double kappa = cfg.kappa;

    auto omega_fn = [kappa](double lambda) {
        return 2.0 * M_PI / (std::sqrt(2.0 * kappa) * filaments::period_T0(lambda, kappa));
    };
    auto c_fn = [](double) { return -0.5; };

    const auto grid = linspace(cfg.lambda_min, cfg.lambda_max,
                               std::max(2, cfg.lambda_points));
    const auto res = spectral::divisor_scan(eps1, omega_fn, c_fn, grid, dio);

    std::vector<std::vector<double>> rows;
    for (const auto& r : res.rows)
        rows.push_back({r.lambda, r.admissible ? 1.0 : 0.0, r.worst_divisor,
                        double(r.worst_l), double(r.worst_j)});
    const std::string csv = cfg.output_dir + "/divisor_scan.csv";
    io::write_csv(csv, {"lambda", "admissible", "worst_divisor", "worst_mode_l",
                        "worst_mode_j"},
                  rows);
    announce(csv);
    std::printf("admissible fraction = %.6f (nu = %.3e, eps1 = %.3e)\n",
                res.admissible_fraction, nu, eps1);
    return kExitOk;
}

} // namespace

int run_scenario(const RunConfig& cfg)
{
    try {
        switch (cfg.scenario) {
        case Scenario::filaments: return run_filaments(cfg);
        case Scenario::period_table: return run_period_table(cfg);
        case Scenario::rings: return run_rings(cfg);
        case Scenario::kernel_check: return run_kernel_check(cfg);
        case Scenario::spectral_check: return run_spectral_check(cfg);
        case Scenario::modeone_scan: return run_modeone_scan(cfg);
        case Scenario::divisor_scan: return run_divisor_scan(cfg);
        }
        return kExitUsage;
    } catch (const std::domain_error& e) {
        json line{{"event", "usage_error"}, {"error", e.what()}};
        std::cout << line.dump() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        json line{{"event", "numerical_failure"},
                  {"scenario", scenario_name(cfg.scenario)},
                  {"error", e.what()}};
        std::cout << line.dump() << "\n";
        return kExitNumerical;
    }
}

} // namespace leapfrog::cli
