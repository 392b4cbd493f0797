#ifndef LEAPFROG_CONTOUR_HPP
#define LEAPFROG_CONTOUR_HPP

#include "leapfrog/filaments.hpp"
#include "leapfrog/fourier.hpp"
#include "leapfrog/transport.hpp"

#include <stdexcept>
#include <vector>

namespace leapfrog::contour {

using filaments::OrbitPhi;
using kernel::Vec2;
using spectral::Fourier2;
using spectral::FourierSeries;

class ShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ring cross-section perturbation f(phi, theta); w = sqrt(1 + 2 eps f).
struct RingShape {
    double eps;
    Fourier2 f;

    double w(double phi, double theta) const;
};

/// Quadrature controls for the stream-function integrals; resolution scales
/// every panel count (stability under doubling is the convergence check).
struct QuadratureParams {
    int resolution = 1;
    int near_levels = 10;    // geometric eta-refinement levels at the target
    double near_width = 0.5; // half-width of the refined eta patch
    // when positive, stream_Psi re-evaluates at doubled resolution and
    // throws QuadratureError if the two values differ by more
    double verify_tol = 0.0;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// gamma_j(phi, theta) = P_j + i eps |ln eps|^{-1} V_j + eps w_j Z_j with the
/// anisotropic elliptic parametrization Z_j; ring 2 uses the star-shifted
/// shape f(phi + pi, .).
Vec2 boundary_gamma(const OrbitPhi& orbit, const RingShape& shape, int ring,
                    double phi, double theta, double Vshift = 0.0);

/// Stream function at the boundary point: self-interaction integral (log
/// singularity refined around (w(theta), theta)) plus ring-interaction
/// integral; Uminus is the value (V1 - V2)(phi).
double stream_Psi(const OrbitPhi& orbit, const RingShape& shape, double phi,
                  double theta, double Uminus = 0.0,
                  const QuadratureParams& q = {});

/// The two parts separately (used by the exchange-identity tests).
double stream_Psi_self(const OrbitPhi& orbit, const RingShape& shape, double phi,
                       double theta, const QuadratureParams& q = {});

/// target_ring = 1: effect of ring 2 on ring 1's boundary (the Psi-form
/// term); target_ring = 2: the swapped integral, whose relative vertical
/// shift is -Uminus.
double stream_Psi_interaction(const OrbitPhi& orbit, const RingShape& shape,
                              double phi, double theta, double Uminus = 0.0,
                              const QuadratureParams& q = {}, int target_ring = 1);

/// Renormalized contour functional F on a uniform theta grid at fixed phi
/// (d_theta of Psi by spectral differentiation of the grid samples).
std::vector<double> functional_F_grid(const OrbitPhi& orbit, const RingShape& shape,
                                      const FourierSeries& V1, const FourierSeries& V2,
                                      double phi, int n_theta = 64,
                                      const QuadratureParams& q = {});

/// Pointwise value via the trigonometric interpolant of the grid.
double functional_F(const OrbitPhi& orbit, const RingShape& shape,
                    const FourierSeries& V1, const FourierSeries& V2, double phi,
                    double theta, int n_theta = 64, const QuadratureParams& q = {});

/// Auxiliary coefficient functions at one phi; second derivatives of G by
/// central differences of the analytic gradient with step scaled to |P1-P2|.
struct AuxAtPhi {
    double f2, h2, g2, g3, q1, q2, q3, q4, b;
    double alpha_check, h2_check; // limiting-orbit versions
};
AuxAtPhi aux_at_phi(const OrbitPhi& orbit, double phi);

struct AuxFunctions {
    std::vector<double> phi;
    std::vector<double> f2, h2, g2, g3, q1, q2, q3, q4, b;
    std::vector<double> alpha_check, h2_check;
};
AuxFunctions aux_functions(const OrbitPhi& orbit, const std::vector<double>& phi_grid);

/// Measured theta-Fourier coefficients of F(eps, 0, 0, 0) at one phi versus
/// the trivial-state predictions.
struct TrivialProjection {
    double sin3_measured, cos2_measured, sin2_measured, cos1_measured, sin1_measured;
    double sin3_predicted, cos2_predicted, sin2_predicted, cos1_predicted, sin1_predicted;
};
TrivialProjection project_F_trivial(const OrbitPhi& orbit, double phi,
                                    int n_theta = 64, const QuadratureParams& q = {});

/// Leading-order approximate profile
/// h0 = g3 cos(3t) - 2 eps|ln eps| g2 cos(2t) + 2 eps|ln eps| f2 sin(2t);
/// the O(eps |ln eps|^{1/2}) remainder of the full construction is omitted.
double approx_profile_h0(const OrbitPhi& orbit, double phi, double theta);

/// h0 assembled as a (phi, theta) series from n_phi-point sampling of the
/// coefficient functions.
Fourier2 approx_profile_h0_series(const OrbitPhi& orbit, int n_phi = 256);

} // namespace leapfrog::contour

#endif
