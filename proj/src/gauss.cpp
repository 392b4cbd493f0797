#include "leapfrog/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace leapfrog {

namespace {

GaussRule compute_rule(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(std::size_t n)
{
    static std::mutex mtx;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

std::vector<double> graded_mesh(double a, double b, int levels, int m)
{
    if (!(b > a) || levels < 1 || m < 1)
        throw std::invalid_argument("graded_mesh: bad arguments");
    std::vector<double> breaks;
    breaks.push_back(a);
    const double len = b - a;
    // panel edges at a + len*2^{-k}, k = levels..0
    for (int k = levels; k >= 0; --k) {
        double lo = (k == levels) ? a : a + len * std::ldexp(1.0, -(k + 1));
        double hi = a + len * std::ldexp(1.0, -k);
        for (int j = 1; j <= m; ++j)
            breaks.push_back(lo + (hi - lo) * double(j) / double(m));
    }
    return breaks;
}

std::vector<double> uniform_mesh(double a, double b, int m)
{
    std::vector<double> breaks(std::size_t(m) + 1);
    for (int j = 0; j <= m; ++j)
        breaks[std::size_t(j)] = a + (b - a) * double(j) / double(m);
    return breaks;
}

} // namespace leapfrog
