#ifndef LEAPFROG_KERNEL_HPP
#define LEAPFROG_KERNEL_HPP

#include <array>

namespace leapfrog::kernel {

/// Point in the (rho, z) half-plane, rho = r^2/2 > 0.
struct HalfPlanePoint {
    double rho;
    double z;
};

struct Vec2 {
    double x, y;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
};

enum class Arg { first, second };

enum class ExpansionRole { plain, anisotropic, gradient };

/// Coefficient lists of one Appendix-C style expansion:
/// value ~ ln(1/eps) sum logCoeffs[n] eps^n + sum regCoeffs[n] eps^n
/// (for the gradient role the powers are shifted by -1 and the entries are
/// vector-valued; see expand_grad_G).
struct ExpansionTable {
    ExpansionRole role;
    std::array<double, 4> logCoeffs; // n = 0..3
    std::array<double, 3> regCoeffs; // n = 0..2
};

/// G(p, q) = (rho rho')^{1/4} J(s), s = (2(sqrt rho - sqrt rho')^2 + (z-z')^2)
///           / (2 sqrt(rho rho')).
/// `fast` selects the memoized J backend used by quadrature-heavy callers.
double eval_G(HalfPlanePoint p, HalfPlanePoint q, bool fast = false);

/// Analytic gradient via J' quadrature; `which` picks nabla_p or nabla_q.
Vec2 grad_G(HalfPlanePoint p, HalfPlanePoint q, Arg which, bool fast = false);

/// |(2 rho d^2_rho + d^2_z) G| by central differences in the first argument;
/// h <= 0 selects 1e-4 times the separation scale, and `richardson` combines
/// the h and h/2 stencils.
double check_harmonic(HalfPlanePoint p, HalfPlanePoint q, double h = 0.0,
                      bool richardson = false);

/// Coefficients of the near-field local expansion
/// G(Z+eps X, Z+eps Y) = ln(1/eps) sum A_n eps^n + sum B_n eps^n + O(eps^3).
ExpansionTable plain_expansion_coeffs(HalfPlanePoint Z, Vec2 X, Vec2 Y);
double expand_G_plain(HalfPlanePoint Z, Vec2 X, Vec2 Y, double eps);

/// Anisotropically scaled variant: shifts eps (2 z1)^{1/4} x1 in rho and
/// eps (2 z1)^{-1/4} x2 in z; coefficients obtained by exact substitution
/// into the plain expansion.
ExpansionTable aniso_expansion_coeffs(HalfPlanePoint Z, Vec2 X, Vec2 Y);
double expand_G_anisotropic(HalfPlanePoint Z, Vec2 X, Vec2 Y, double eps);

/// The anisotropically scaled first point Z + eps*(scaled X).
HalfPlanePoint aniso_point(HalfPlanePoint Z, Vec2 X, double eps);

/// Gradient expansion
/// (nabla_1 G)(scaled pts) = |ln eps| sum_{n=1..3} eps^{n-1} C_n
///                           + sum_{n=0..2} eps^{n-1} D_n + O(eps^2);
/// which = second swaps X and Y. D2 is obtained by central differences of
/// the implemented B2 coefficient.
Vec2 expand_grad_G(HalfPlanePoint Z, Vec2 X, Vec2 Y, double eps,
                   Arg which = Arg::first);

/// Individual gradient-expansion coefficients (n = 1..3 for C, 0..2 for D).
Vec2 grad_coeff_C(int n, HalfPlanePoint Z, Vec2 X, Vec2 Y);
Vec2 grad_coeff_D(int n, HalfPlanePoint Z, Vec2 X, Vec2 Y);

/// Leading |ln eps|-normalized limits of the three second derivatives of G
/// under the leapfrog scaling (d^2_{p11}, d^2_{p12}, d_{p11} d_{p12}).
struct SecondDerivLimits {
    double d2_rho_rho;
    double d2_z_z;
    double d2_rho_z;
};
SecondDerivLimits second_deriv_asymptotics(double kappa, double x1, double x2);

} // namespace leapfrog::kernel

#endif
