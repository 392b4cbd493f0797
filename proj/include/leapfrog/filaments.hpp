#ifndef LEAPFROG_FILAMENTS_HPP
#define LEAPFROG_FILAMENTS_HPP

#include "leapfrog/kernel.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace leapfrog::filaments {

using kernel::HalfPlanePoint;
using kernel::Vec2;

/// (eps, kappa, lambda) with the derived leapfrog scales.
struct PhysicalParams {
    double eps;
    double kappa;
    double lambda;

    PhysicalParams(double eps_, double kappa_, double lambda_);

    double log_eps() const;                  // |ln eps| (> 1 by construction)
    double r_eps() const;                    // (2 kappa)^{1/4} |ln eps|^{-1/2}
    double alpha() const;                    // lambda^2 / (8 kappa)
};

struct FilamentPair {
    HalfPlanePoint P1;
    HalfPlanePoint P2;
};

struct ScaledState {
    double x1;
    double x2;
};

enum class Model { limiting, perturbed };

/// Time-stamped samples with conserved-quantity logs. For physical runs the
/// state rows are (p11, p12, p21, p22) and logs are (H, p11+p21); for scaled
/// runs the rows are (x1, x2, 0, 0) and logs are (levelset residual, 0).
struct Trajectory {
    Model model;
    bool scaled = false;
    std::vector<double> times;
    std::vector<std::array<double, 4>> states;
    std::vector<std::array<double, 2>> logs;
};

/// Vertical initial configuration with p11 + p21 = 2 kappa.
FilamentPair initial_condition(const PhysicalParams& p);

/// Scaled <-> physical transport of Eq.-scaling type (z-difference split
/// symmetrically between the two filaments).
FilamentPair scaled_to_physical(ScaledState s, const PhysicalParams& p);
ScaledState physical_to_scaled(const FilamentPair& P, const PhysicalParams& p);

/// H = (1/sqrt2) G(P1,P2) + sum_j sqrt(p_j1)/(2 sqrt2) (|ln eps| - 7/4
///     + (5/4) ln 8 + (3/4) ln p_j1).
double hamiltonian_H(const FilamentPair& P, const PhysicalParams& p);

/// Velocities (dP1/dtau, dP2/dtau) of the filament system.
std::pair<Vec2, Vec2> filament_rhs(const FilamentPair& P, const PhysicalParams& p);

/// Reduced planar vector field; the perturbed model is the exact transport
/// of filament_rhs through the scaling (no truncation).
Vec2 reduced_rhs(ScaledState s, const PhysicalParams& p, Model model);

/// Adaptive RK(5)4 trajectories with conservation logs at accepted steps.
Trajectory integrate_physical(const FilamentPair& state0, const PhysicalParams& p,
                              double t_end, double tol);
Trajectory integrate_scaled(ScaledState state0, const PhysicalParams& p, Model model,
                            double t_end, double tol);

/// State transported to an exact time (endpoint-clamped integration).
FilamentPair flow_physical(const FilamentPair& state0, const PhysicalParams& p,
                           double t0, double t1, double tol);
ScaledState flow_scaled(ScaledState state0, const PhysicalParams& p, Model model,
                        double t0, double t1, double tol);

/// Closed-form limit period T0(lambda, kappa) =
/// 2 lambda^2 int_0^1 e^{alpha(1-s)} / sqrt(e^{alpha(1-s)} - s) ds/sqrt(s),
/// evaluated after the endpoint-regularizing substitution s = sin^2(u).
double period_T0(double lambda, double kappa);

/// First return time to the section {x2 = 0, x1 > 0, downward crossing} of
/// the reduced flow started at (lambda, 0); bisection to 1e-10 in time.
double measure_period(const PhysicalParams& p, Model model, double tol = 1e-12);

struct SymmetryReport {
    double max_p11_exchange;  // |p11(t + T/2) - p21(t)|
    double max_zdiff_antisym; // |(p12-p22)(t + T/2) + (p12-p22)(t)|
    double max_x1_even;       // |x1(-t) - x1(t)|
    double max_x2_odd;        // |x2(-t) + x2(t)|
};

/// Max deviations of the orbital symmetries over n_samples per period.
SymmetryReport check_symmetries(const PhysicalParams& p, Model model, double T,
                                int n_samples = 32, double tol = 1e-12);

/// Period-averaged vertical drift of the midpoint, by quadrature of
/// (1/(2|ln eps|)) (sqrt(1/2)(d_rho1 + d_rho2) G + d_rho1 Gt + d_rho2 Gt)
/// along the orbit over [0, T].
double drift_speed(const PhysicalParams& p, double T, double tol = 1e-12);

/// Refined drift-speed asymptotic: the leading 1/(4 sqrt(2 kappa)) with its
/// |ln eps|^{-1} corrections plus the orbit average of
/// x1^2/r^2 - (1/2) ln r^2 along the perturbed reduced orbit over [0, T].
double drift_speed_refined_asymptotic(const PhysicalParams& p, double T,
                                      double tol = 1e-12);

/// omega = 2 pi / int_0^T sqrt(2 p11) dtau on the perturbed orbit.
double frequency_omega(const PhysicalParams& p, double tol = 1e-12);
double frequency_omega(const PhysicalParams& p, double T, double tol);

/// Trajectory CSV export: physical runs emit
/// t, p11, p12, p21, p22, H, sum_rho and scaled runs emit
/// t, x1, x2, levelset_residual (17 significant digits, round-trip safe).
void export_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Limiting-orbit state (y1, y2)(phi) = x(T0 phi / (2 pi)) of the reduced
/// planar system started at (lambda, 0).
ScaledState limiting_state_at_phi(double lambda, double kappa, double phi,
                                  double tol = 1e-12);

/// Orbit reparametrized by phi = omega int sqrt(2 p11), sampled on a uniform
/// phi grid over one 2*pi period; accessors interpolate with a local cubic.
class OrbitPhi {
public:
    OrbitPhi(const PhysicalParams& p, int n_grid = 1024, double tol = 1e-12);

    const PhysicalParams& params() const { return params_; }
    double period() const { return T_; }
    double omega() const { return omega_; }

    Vec2 P1(double phi) const;      // (p11, p12)
    Vec2 P2(double phi) const;      // (p21, p22)
    Vec2 dP1_dphi(double phi) const;
    double p11(double phi) const;
    double p21(double phi) const;
    double dp11_dphi(double phi) const;

private:
    double interp(const std::vector<double>& tab, double phi) const;

    PhysicalParams params_;
    double T_, omega_;
    int n_;
    std::vector<double> p11_, p12_, p21_, p22_, dp11_, dp12_;
};

} // namespace leapfrog::filaments

#endif
