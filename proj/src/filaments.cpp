#include "leapfrog/filaments.hpp"
#include "leapfrog/io.hpp"
#include "leapfrog/gauss.hpp"
#include "leapfrog/ode.hpp"
#include "leapfrog/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace leapfrog::filaments {

namespace {

using State4 = std::array<double, 4>;
using State2 = std::array<double, 2>;

const double kLn8 = std::log(8.0);

FilamentPair to_pair(const State4& y)
{
    return {{y[0], y[1]}, {y[2], y[3]}};
}

State4 to_state(const FilamentPair& P)
{
    return {P.P1.rho, P.P1.z, P.P2.rho, P.P2.z};
}

double levelset_residual(ScaledState s, const PhysicalParams& p)
{
    const double r2 = s.x1 * s.x1 + s.x2 * s.x2;
    const double target = p.lambda * p.lambda
        * std::exp(-(s.x1 * s.x1 - p.lambda * p.lambda) / (8.0 * p.kappa));
    return std::abs(r2 - target);
}

// vertical velocity contribution of the self-induction term
double self_induction_speed(double rho, double log_eps)
{
    return 0.25 / std::sqrt(2.0 * rho)
        * (log_eps + 0.25 * (5.0 * kLn8 + 3.0 * std::log(rho) - 1.0));
}

} // namespace

PhysicalParams::PhysicalParams(double eps_, double kappa_, double lambda_)
    : eps(eps_), kappa(kappa_), lambda(lambda_)
{
    if (!(eps > 0.0) || eps >= std::exp(-1.0))
        throw std::domain_error("PhysicalParams: eps must satisfy 0 < eps < 1/e");
    if (!(kappa > 0.0))
        throw std::domain_error("PhysicalParams: kappa must be positive");
    if (!(lambda > 0.0))
        throw std::domain_error("PhysicalParams: lambda must be positive");
}

double PhysicalParams::log_eps() const { return std::abs(std::log(eps)); }

double PhysicalParams::r_eps() const
{
    return std::pow(2.0 * kappa, 0.25) / std::sqrt(log_eps());
}

double PhysicalParams::alpha() const { return lambda * lambda / (8.0 * kappa); }

FilamentPair initial_condition(const PhysicalParams& p)
{
    return scaled_to_physical({p.lambda, 0.0}, p);
}

FilamentPair scaled_to_physical(ScaledState s, const PhysicalParams& p)
{
    const double a = std::pow(2.0 * p.kappa, 0.25);
    const double dr = 0.5 * p.r_eps() * a * s.x1;
    const double dz = 0.5 * p.r_eps() / a * s.x2;
    FilamentPair P{{p.kappa + dr, dz}, {p.kappa - dr, -dz}};
    if (!(P.P2.rho > 0.0))
        throw std::domain_error("scaled_to_physical: state leaves the half-plane");
    return P;
}

ScaledState physical_to_scaled(const FilamentPair& P, const PhysicalParams& p)
{
    const double a = std::pow(2.0 * p.kappa, 0.25);
    return {(P.P1.rho - P.P2.rho) / (p.r_eps() * a),
            (P.P1.z - P.P2.z) * a / p.r_eps()};
}

double hamiltonian_H(const FilamentPair& P, const PhysicalParams& p)
{
    const double L = p.log_eps();
    double H = kernel::eval_G(P.P1, P.P2) / std::sqrt(2.0);
    for (double rho : {P.P1.rho, P.P2.rho})
        H += std::sqrt(rho) / (2.0 * std::sqrt(2.0))
            * (L - 1.75 + 1.25 * kLn8 + 0.75 * std::log(rho));
    return H;
}

std::pair<Vec2, Vec2> filament_rhs(const FilamentPair& P, const PhysicalParams& p)
{
    const double L = p.log_eps();
    const Vec2 g1 = kernel::grad_G(P.P1, P.P2, kernel::Arg::first, true);
    const Vec2 g2 = kernel::grad_G(P.P2, P.P1, kernel::Arg::first, true);
    const double c = 1.0 / (std::sqrt(2.0) * L);
    Vec2 v1{-c * g1.y, c * g1.x + self_induction_speed(P.P1.rho, L) / L};
    Vec2 v2{-c * g2.y, c * g2.x + self_induction_speed(P.P2.rho, L) / L};
    return {v1, v2};
}

Vec2 reduced_rhs(ScaledState s, const PhysicalParams& p, Model model)
{
    const double r2 = s.x1 * s.x1 + s.x2 * s.x2;
    if (!(r2 > 0.0))
        throw std::domain_error("reduced_rhs: singular at the origin");
    if (model == Model::limiting)
        return {s.x2 / r2, -s.x1 / r2 - s.x1 / (8.0 * p.kappa)};
    const FilamentPair P = scaled_to_physical(s, p);
    auto [v1, v2] = filament_rhs(P, p);
    const double a = std::pow(2.0 * p.kappa, 0.25);
    return {(v1.x - v2.x) / (p.r_eps() * a), (v1.y - v2.y) * a / p.r_eps()};
}

namespace {

auto physical_field(const PhysicalParams& p)
{
    return [&p](double, const State4& y) -> State4 {
        if (!(y[0] > 0.0) || !(y[2] > 0.0))
            throw IntegrationError("filament integration left the half-plane", 0.0);
        auto [v1, v2] = filament_rhs(to_pair(y), p);
        return {v1.x, v1.y, v2.x, v2.y};
    };
}

auto scaled_field(const PhysicalParams& p, Model model)
{
    return [&p, model](double, const State2& y) -> State2 {
        Vec2 v = reduced_rhs({y[0], y[1]}, p, model);
        return {v.x, v.y};
    };
}

} // namespace

Trajectory integrate_physical(const FilamentPair& state0, const PhysicalParams& p,
                              double t_end, double tol)
{
    if (!(tol > 0.0))
        throw std::domain_error("integrate_physical: tol must be positive");
    Trajectory traj;
    traj.model = Model::perturbed;
    traj.scaled = false;
    State4 y = to_state(state0);
    integrate_adaptive<4>(physical_field(p), y, 0.0, t_end, tol,
                          [&](double t, const State4& s, const State4&) {
                              traj.times.push_back(t);
                              traj.states.push_back(s);
                              traj.logs.push_back({hamiltonian_H(to_pair(s), p), s[0] + s[2]});
                          });
    return traj;
}

Trajectory integrate_scaled(ScaledState state0, const PhysicalParams& p, Model model,
                            double t_end, double tol)
{
    if (!(tol > 0.0))
        throw std::domain_error("integrate_scaled: tol must be positive");
    Trajectory traj;
    traj.model = model;
    traj.scaled = true;
    State2 y{state0.x1, state0.x2};
    integrate_adaptive<2>(scaled_field(p, model), y, 0.0, t_end, tol,
                          [&](double t, const State2& s, const State2&) {
                              traj.times.push_back(t);
                              traj.states.push_back({s[0], s[1], 0.0, 0.0});
                              traj.logs.push_back({levelset_residual({s[0], s[1]}, p), 0.0});
                          });
    return traj;
}

FilamentPair flow_physical(const FilamentPair& state0, const PhysicalParams& p,
                           double t0, double t1, double tol)
{
    State4 y = flow<4>(physical_field(p), to_state(state0), t0, t1, tol);
    return to_pair(y);
}

ScaledState flow_scaled(ScaledState state0, const PhysicalParams& p, Model model,
                        double t0, double t1, double tol)
{
    State2 y = flow<2>(scaled_field(p, model), {state0.x1, state0.x2}, t0, t1, tol);
    return {y[0], y[1]};
}

double period_T0(double lambda, double kappa)
{
    if (!(lambda > 0.0) || !(kappa > 0.0))
        throw std::domain_error("period_T0: lambda and kappa must be positive");
    const double alpha = lambda * lambda / (8.0 * kappa);
    // s = sin^2(u); e^{alpha cos^2 u} - sin^2 u = expm1(alpha cos^2 u) + cos^2 u
    auto f = [alpha](double u) {
        const double c = std::cos(u);
        const double e = std::exp(alpha * c * c);
        return 2.0 * c * e / std::sqrt(std::expm1(alpha * c * c) + c * c);
    };
    double prev = 0.0;
    for (int m = 4; m <= 4096; m *= 2) {
        double val = gauss_mesh(f, uniform_mesh(0.0, 0.5 * M_PI, m), 16);
        if (m > 4 && std::abs(val - prev) <= 1e-13 * std::abs(val))
            return 2.0 * lambda * lambda * val;
        prev = val;
    }
    return 2.0 * lambda * lambda * prev;
}

double measure_period(const PhysicalParams& p, Model model, double tol)
{
    const double lambda = p.lambda;
    const double t_max = 10.0 * 2.0 * M_PI * lambda * lambda * std::exp(0.5 * p.alpha()) * 1.5;

    double t_prev = 0.0;
    State2 y_prev{lambda, 0.0};
    double t_hit_lo = -1.0, t_hit_hi = -1.0;
    State2 y_lo{0.0, 0.0};

    try {
        State2 y = y_prev;
        integrate_adaptive<2>(scaled_field(p, model), y, 0.0, t_max, tol,
                              [&](double t, const State2& s, const State2&) {
                                  if (t == 0.0) {
                                      t_prev = t;
                                      y_prev = s;
                                      return;
                                  }
                                  // downward crossing of {x2 = 0} with x1 > 0
                                  if (y_prev[1] > 0.0 && s[1] <= 0.0 && s[0] > 0.0) {
                                      t_hit_lo = t_prev;
                                      t_hit_hi = t;
                                      y_lo = y_prev;
                                      throw StopIntegration{};
                                  }
                                  t_prev = t;
                                  y_prev = s;
                              });
    } catch (const StopIntegration&) {
        // event located below
    }
    if (t_hit_lo < 0.0)
        throw std::runtime_error("measure_period: no return to the section (non-periodic)");

    // bisection on the flow restarted from the bracketing step
    double lo = t_hit_lo, hi = t_hit_hi;
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        State2 ym = flow<2>(scaled_field(p, model), y_lo, t_hit_lo, mid, tol);
        if (ym[1] > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

SymmetryReport check_symmetries(const PhysicalParams& p, Model model, double T,
                                int n_samples, double tol)
{
    if (!(T > 0.0) || n_samples < 2)
        throw std::domain_error("check_symmetries: need T > 0 and >= 2 samples");
    SymmetryReport rep{0.0, 0.0, 0.0, 0.0};

    // physical-orbit exchange symmetries
    {
        const FilamentPair P0 = initial_condition(p);
        FilamentPair Pa = P0;
        double t_cur = 0.0;
        for (int i = 0; i < n_samples; ++i) {
            double t = T * double(i) / n_samples;
            Pa = flow_physical(Pa, p, t_cur, t, tol);
            t_cur = t;
            FilamentPair Pb = flow_physical(Pa, p, t, t + 0.5 * T, tol);
            rep.max_p11_exchange =
                std::max(rep.max_p11_exchange, std::abs(Pb.P1.rho - Pa.P2.rho));
            rep.max_zdiff_antisym = std::max(
                rep.max_zdiff_antisym,
                std::abs((Pb.P1.z - Pb.P2.z) + (Pa.P1.z - Pa.P2.z)));
        }
    }

    // reduced-orbit reflection symmetries
    {
        const ScaledState s0{p.lambda, 0.0};
        for (int i = 1; i < n_samples; ++i) {
            double t = 0.5 * T * double(i) / n_samples;
            ScaledState sp = flow_scaled(s0, p, model, 0.0, t, tol);
            ScaledState sm = flow_scaled(s0, p, model, 0.0, -t, tol);
            rep.max_x1_even = std::max(rep.max_x1_even, std::abs(sm.x1 - sp.x1));
            rep.max_x2_odd = std::max(rep.max_x2_odd, std::abs(sm.x2 + sp.x2));
        }
    }
    return rep;
}

double drift_speed(const PhysicalParams& p, double T, double tol)
{
    if (!(T > 0.0))
        throw std::domain_error("drift_speed: T must be positive");
    const double L = p.log_eps();
    const int n = 256; // trapezoid on a periodic integrand
    FilamentPair P = initial_condition(p);
    double t_cur = 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = T * double(i) / n;
        P = flow_physical(P, p, t_cur, t, tol);
        t_cur = t;
        const double g1 = kernel::grad_G(P.P1, P.P2, kernel::Arg::first, true).x;
        const double g2 = kernel::grad_G(P.P2, P.P1, kernel::Arg::first, true).x;
        sum += (g1 + g2) / std::sqrt(2.0) + self_induction_speed(P.P1.rho, L)
            + self_induction_speed(P.P2.rho, L);
    }
    return sum / n / (2.0 * L);
}

double drift_speed_refined_asymptotic(const PhysicalParams& p, double T, double tol)
{
    if (!(T > 0.0))
        throw std::domain_error("drift_speed_refined_asymptotic: T must be positive");
    const double L = p.log_eps();
    const double kappa = p.kappa;
    const int n = 256;
    ScaledState s{p.lambda, 0.0};
    double t_cur = 0.0, avg = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = T * double(i) / n;
        s = flow_scaled(s, p, Model::perturbed, t_cur, t, tol);
        t_cur = t;
        const double r2 = s.x1 * s.x1 + s.x2 * s.x2;
        avg += s.x1 * s.x1 / r2 - 0.5 * std::log(r2);
    }
    avg /= n;
    const double lead = 1.0 / (4.0 * std::sqrt(2.0 * kappa));
    return lead
        * (1.0 + 0.5 / L * std::abs(std::log(std::sqrt(2.0 * kappa) / L))
           + (2.5 * kLn8 + 1.5 * std::log(kappa) - 1.25) / L)
        + avg / (4.0 * L * std::sqrt(2.0 * kappa));
}

double frequency_omega(const PhysicalParams& p, double T, double tol)
{
    if (!(T > 0.0))
        throw std::domain_error("frequency_omega: T must be positive");
    const int n = 256;
    FilamentPair P = initial_condition(p);
    double t_cur = 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = T * double(i) / n;
        P = flow_physical(P, p, t_cur, t, tol);
        t_cur = t;
        sum += std::sqrt(2.0 * P.P1.rho);
    }
    return 2.0 * M_PI / (sum * T / n);
}

double frequency_omega(const PhysicalParams& p, double tol)
{
    return frequency_omega(p, measure_period(p, Model::perturbed, tol), tol);
}

void export_trajectory_csv(const std::string& path, const Trajectory& traj)
{
    std::vector<std::vector<double>> rows;
    if (traj.scaled) {
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            rows.push_back({traj.times[i], traj.states[i][0], traj.states[i][1],
                            traj.logs[i][0]});
        io::write_csv(path, {"t", "x1", "x2", "levelset_residual"}, rows);
        return;
    }
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        rows.push_back({traj.times[i], traj.states[i][0], traj.states[i][1],
                        traj.states[i][2], traj.states[i][3], traj.logs[i][0],
                        traj.logs[i][1]});
    io::write_csv(path, {"t", "p11", "p12", "p21", "p22", "H", "sum_rho"}, rows);
}

ScaledState limiting_state_at_phi(double lambda, double kappa, double phi, double tol)
{
    // eps plays no role in the limiting field; pick any valid value
    const PhysicalParams p(1e-3, kappa, lambda);
    const double T0 = period_T0(lambda, kappa);
    return flow_scaled({lambda, 0.0}, p, Model::limiting, 0.0,
                       T0 * phi / (2.0 * M_PI), tol);
}

OrbitPhi::OrbitPhi(const PhysicalParams& p, int n_grid, double tol)
    : params_(p), n_(n_grid)
{
    if (n_grid < 16)
        throw std::domain_error("OrbitPhi: grid too small");
    T_ = measure_period(p, Model::perturbed, tol);
    omega_ = frequency_omega(p, T_, tol);

    p11_.resize(std::size_t(n_));
    p12_.resize(std::size_t(n_));
    p21_.resize(std::size_t(n_));
    p22_.resize(std::size_t(n_));
    dp11_.resize(std::size_t(n_));
    dp12_.resize(std::size_t(n_));

    // integrate d state / d phi = f(state) / (omega sqrt(2 p11))
    auto field = [this](double, const State4& y) -> State4 {
        auto [v1, v2] = filament_rhs(to_pair(y), params_);
        const double c = 1.0 / (omega_ * std::sqrt(2.0 * y[0]));
        return {c * v1.x, c * v1.y, c * v2.x, c * v2.y};
    };

    State4 y = to_state(initial_condition(p));
    for (int i = 0; i < n_; ++i) {
        const double phi_prev = 2.0 * M_PI * double(i - 1) / n_;
        const double phi = 2.0 * M_PI * double(i) / n_;
        if (i > 0)
            y = flow<4>(field, y, phi_prev, phi, tol);
        State4 d = field(phi, y);
        p11_[std::size_t(i)] = y[0];
        p12_[std::size_t(i)] = y[1] - y[3]; // z-difference, 2pi-periodic
        p21_[std::size_t(i)] = y[2];
        p22_[std::size_t(i)] = -(y[1] - y[3]);
        dp11_[std::size_t(i)] = d[0];
        dp12_[std::size_t(i)] = d[1];
    }
    // store the z-difference halves so that P1 - P2 is exact
    for (int i = 0; i < n_; ++i) {
        p12_[std::size_t(i)] *= 0.5;
        p22_[std::size_t(i)] *= 0.5;
    }
}

double OrbitPhi::interp(const std::vector<double>& tab, double phi) const
{
    const double h = 2.0 * M_PI / n_;
    double u = phi / h;
    double fl = std::floor(u);
    double x = u - fl;
    long i0 = long(fl);
    auto at = [&](long k) {
        long idx = (i0 + k) % n_;
        if (idx < 0)
            idx += n_;
        return tab[std::size_t(idx)];
    };
    // 4-point Lagrange on the uniform periodic grid
    const double ym1 = at(-1), y0 = at(0), y1 = at(1), y2 = at(2);
    const double a = -x * (x - 1.0) * (x - 2.0) / 6.0;
    const double b = (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0;
    const double c = -(x + 1.0) * x * (x - 2.0) / 2.0;
    const double d = (x + 1.0) * x * (x - 1.0) / 6.0;
    return a * ym1 + b * y0 + c * y1 + d * y2;
}

Vec2 OrbitPhi::P1(double phi) const { return {interp(p11_, phi), interp(p12_, phi)}; }
Vec2 OrbitPhi::P2(double phi) const { return {interp(p21_, phi), interp(p22_, phi)}; }
Vec2 OrbitPhi::dP1_dphi(double phi) const
{
    return {interp(dp11_, phi), interp(dp12_, phi)};
}
double OrbitPhi::p11(double phi) const { return interp(p11_, phi); }
double OrbitPhi::p21(double phi) const { return interp(p21_, phi); }
double OrbitPhi::dp11_dphi(double phi) const { return interp(dp11_, phi); }

} // namespace leapfrog::filaments
