#ifndef LEAPFROG_SPECFUN_HPP
#define LEAPFROG_SPECFUN_HPP

#include <array>

namespace leapfrog::specfun {

/// Coefficients of the small-s splitting J(s) = |ln s| sum A_n s^n + sum B_n s^n.
struct JSeriesCoeffs {
    std::array<double, 4> A; // A0..A3
    std::array<double, 3> B; // B0..B2
};

/// The exact coefficient values (A0 = 1/2, ..., B2 = 31/2048 - (15/1024) ln 8).
JSeriesCoeffs j_series_coeffs();

/// J(s) = int_0^pi cos(t) / sqrt(s + 2 - 2 cos t) dt, s > 0.
/// Composite Gauss-Legendre on a mesh graded toward t = 0, panels doubled
/// until two successive values agree to `tol`.
double eval_J(double s, double tol = 1e-12);

/// J'(s) by quadrature of the differentiated integrand
/// -(1/2) int_0^pi cos(t) (s + 2 - 2 cos t)^{-3/2} dt.
double eval_J_deriv(double s, double tol = 1e-12);

/// Truncated series |ln s| sum_{n<=n_max} A_n s^n + sum_{n<=min(n_max,2)} B_n s^n.
/// Valid for 0 < s < 4; n_max in 0..3 (no B3 is available, the n=3 regular
/// term is dropped).
double eval_J_series(double s, int n_max);

/// Residual |s(s+4) J'' + 2(s+2) J' - (3/4) J| with J', J'' by central
/// differences of eval_J; h <= 0 selects the default max(1e-4, 1e-3 s).
double check_J_ode(double s, double h = 0.0, double quad_tol = 1e-12);

/// Q_{1/2}(x) = int_0^pi cos(t) / sqrt(2x - 2 cos t) dt, x > 1.
double legendre_Q_half(double x);

/// Cached evaluations backed by the same quadrature (piecewise-Chebyshev
/// memoization in ln s); used by kernel-heavy inner loops.
double fast_J(double s);
double fast_J_deriv(double s);

/// Digamma function psi(x) = Gamma'(x)/Gamma(x), x not a nonpositive integer.
double digamma(double x);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

} // namespace leapfrog::specfun

#endif
