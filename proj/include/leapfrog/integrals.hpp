#ifndef LEAPFROG_INTEGRALS_HPP
#define LEAPFROG_INTEGRALS_HPP

#include <string>
#include <vector>

namespace leapfrog::spectral {

struct IdentityResult {
    std::string name;
    double computed;
    double expected;
    double deviation;
};

/// Evaluates the unit-disk log-kernel and Poisson-kernel identities by 2D
/// quadrature (grading toward the boundary singularity at rho = 1, eta = 0)
/// and reports the deviations from the closed-form values {0, -pi/2, -pi/6, pi}.
std::vector<IdentityResult> integral_identities(int resolution = 1);

} // namespace leapfrog::spectral

#endif
