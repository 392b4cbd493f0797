#include "leapfrog/integrals.hpp"
#include "leapfrog/gauss.hpp"

#include <cmath>
#include <functional>

namespace leapfrog::spectral {

namespace {

// Integrates f(rho, eta) over [0,1] x [0,pi] (times 2, all integrands are
// even in eta) with meshes graded toward rho = 1 and eta = 0.
double disk_integral(const std::function<double(double, double)>& f, int resolution)
{
    const int m = 2 * resolution;
    auto rho_mesh = graded_mesh(0.0, 1.0, 30, m);
    // flip: grade toward 1 instead of 0
    for (auto& x : rho_mesh)
        x = 1.0 - x;
    std::reverse(rho_mesh.begin(), rho_mesh.end());
    const auto eta_of_rho = [m](double one_minus_rho) {
        int levels = 6;
        while (levels < 40 && M_PI * std::ldexp(1.0, -levels) > 0.5 * one_minus_rho)
            ++levels;
        return graded_mesh(0.0, M_PI, levels, m);
    };
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < rho_mesh.size(); ++k) {
        const double a = rho_mesh[k], b = rho_mesh[k + 1];
        auto inner = [&](double rho) {
            auto eta_mesh = eta_of_rho(std::max(1e-12, 1.0 - rho));
            return gauss_mesh([&](double eta) { return f(rho, eta); }, eta_mesh, 12);
        };
        total += gauss_panel(inner, a, b, 12);
    }
    return 2.0 * total;
}

double log_abs2(double rho, double eta)
{
    const double s = std::sin(0.5 * eta);
    return std::log((1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s);
}

} // namespace

std::vector<IdentityResult> integral_identities(int resolution)
{
    std::vector<IdentityResult> out;
    auto push = [&out](const std::string& name, double computed, double expected) {
        out.push_back({name, computed, expected, std::abs(computed - expected)});
    };

    push("int ln|1-rho e^{i eta}| rho",
         disk_integral([](double r, double e) { return 0.5 * log_abs2(r, e) * r; },
                       resolution),
         0.0);
    push("int ln|1-rho e^{i eta}|^2 cos(eta) rho^2",
         disk_integral(
             [](double r, double e) { return log_abs2(r, e) * std::cos(e) * r * r; },
             resolution),
         -0.5 * M_PI);
    push("int ln|1-rho e^{i eta}|^2 cos(2 eta) rho^3",
         disk_integral(
             [](double r, double e) { return log_abs2(r, e) * std::cos(2.0 * e) * r * r * r; },
             resolution),
         -M_PI / 6.0);
    push("int (1-rho cos eta)/(1+rho^2-2 rho cos eta) rho",
         disk_integral(
             [](double r, double e) {
                 const double s = std::sin(0.5 * e);
                 const double denom = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
                 return (1.0 - r * std::cos(e)) / denom * r;
             },
             resolution),
         M_PI);
    return out;
}

} // namespace leapfrog::spectral
