#ifndef LEAPFROG_MODEONE_HPP
#define LEAPFROG_MODEONE_HPP

#include <vector>

namespace leapfrog::modeone {

/// Smooth even pi-periodic coefficient functions of the nested integral
/// operator, sampled on a shared uniform grid over [0, 2*pi] (endpoint
/// included; the midpoint lands exactly on pi).
struct CoefficientTriple {
    double T0;
    std::vector<double> phi;  // n+1 nodes, phi_0 = 0, phi_n = 2*pi
    std::vector<double> rho1; // e^{-f3}
    std::vector<double> rho2; // T0^2 h2_check e^{2 f3} / (64 pi^2 kappa)
    std::vector<double> rho3; // e^{-f3}
};

/// Builds the coefficients from the limiting orbit at (lambda, kappa):
/// f3(phi) = (T0/pi) int_0^phi y1 y2 / (y1^2+y2^2)^2.
CoefficientTriple build_coefficients(double lambda, double kappa, int n_grid = 512);

/// T[g](phi) = rho2_scale * rho1(phi) int_0^phi rho2 (int_0^tau rho3 g),
/// nested cumulative trapezoid sums on the shared grid.
std::vector<double> apply_T(const std::vector<double>& g, const CoefficientTriple& c,
                            double rho2_scale = 1.0);

struct InvertResult {
    std::vector<double> solution;
    double residual; // || u - T u - rhs ||_inf on the grid
};

/// Solves (Id - T) u = rhs by a dense Nystrom discretization (the lower
/// triangular cumulative-sum matrices assembled explicitly) and LU.
InvertResult invert_IminusT(const std::vector<double>& rhs, const CoefficientTriple& c,
                            double rho2_scale = 1.0);

/// P = 1 + int_0^pi rho2 (int_0^tau rho3 (Id-T)^{-1}[rho1]) dtau.
double nonresonance_P(const CoefficientTriple& c, double rho2_scale = 1.0);
double nonresonance_P(double lambda, double kappa, int n_grid = 512,
                      double rho2_scale = 1.0);

/// The star-admissibility constant b = -(1/2) int_0^pi rho2 (int_0^tau rho3 g).
double star_constant_b(const std::vector<double>& g, const CoefficientTriple& c,
                       double rho2_scale = 1.0);

struct ZeroBracket {
    double lo, hi;     // bisection bracket, |hi - lo| <= 1e-6
    double lambda;     // midpoint
};

/// Sign changes of lambda -> P(lambda, kappa) bracketed by bisection.
std::vector<ZeroBracket> scan_zeros(double kappa, double lambda_lo, double lambda_hi,
                                    int n_points, int n_grid = 512);

/// Per-lambda table for CSV export.
struct ScanRow {
    double lambda;
    double P_value;
    bool bracket; // true when a sign change lies in [lambda, next lambda]
};
std::vector<ScanRow> scan_table(double kappa, double lambda_lo, double lambda_hi,
                                int n_points, int n_grid = 512);

} // namespace leapfrog::modeone

#endif
