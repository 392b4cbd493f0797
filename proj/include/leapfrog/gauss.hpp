#ifndef LEAPFROG_GAUSS_HPP
#define LEAPFROG_GAUSS_HPP

#include <cstddef>
#include <vector>

namespace leapfrog {

/// Gauss-Legendre rule on [-1,1]: nodes[i], weights[i], i = 0..n-1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule (cached, thread-safe).
const GaussRule& gauss_legendre(std::size_t n);

/// Integrates f over [a,b] with the n-point rule.
template <class F>
double gauss_panel(F&& f, double a, double b, std::size_t n)
{
    const GaussRule& rule = gauss_legendre(n);
    const double c = 0.5 * (b - a);
    const double m = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(m + c * rule.nodes[i]);
    return c * sum;
}

/// Integrates f over a partition given by breakpoints (ascending).
template <class F>
double gauss_mesh(F&& f, const std::vector<double>& breaks, std::size_t n)
{
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        sum += gauss_panel(f, breaks[k], breaks[k + 1], n);
    return sum;
}

/// Breakpoints of a mesh on [a,b] graded geometrically toward a
/// (levels panels whose widths halve toward a), each split into m pieces.
std::vector<double> graded_mesh(double a, double b, int levels, int m);

/// Uniform mesh with m panels.
std::vector<double> uniform_mesh(double a, double b, int m);

} // namespace leapfrog

#endif
