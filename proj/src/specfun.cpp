#include "leapfrog/specfun.hpp"
#include "leapfrog/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace leapfrog::specfun {

namespace {

constexpr std::size_t kGaussOrder = 12;

// Number of geometric grading levels so the innermost panel near t = 0 has
// width^2 below the regularization scale s.
int grading_levels(double s)
{
    int levels = 4;
    while (levels < 60) {
        double w = M_PI * std::ldexp(1.0, -levels);
        if (w * w <= 0.25 * s)
            break;
        ++levels;
    }
    return levels;
}

template <class F>
double converge_on_graded_mesh(F&& f, double s, double tol, int* m_used = nullptr)
{
    const int levels = grading_levels(s);
    double prev = 0.0;
    bool have_prev = false;
    for (int m = 1; m <= 64; m *= 2) {
        auto breaks = graded_mesh(0.0, M_PI, levels, m);
        double val = gauss_mesh(f, breaks, kGaussOrder);
        if (have_prev && std::abs(val - prev) <= tol * std::max(1.0, std::abs(val))) {
            if (m_used)
                *m_used = m;
            return val;
        }
        prev = val;
        have_prev = true;
    }
    if (m_used)
        *m_used = 64;
    return prev;
}

double eval_J_on_mesh(double s, const std::vector<double>& breaks)
{
    auto f = [s](double t) {
        double u = std::sin(0.5 * t);
        return std::cos(t) / std::sqrt(s + 4.0 * u * u);
    };
    return gauss_mesh(f, breaks, kGaussOrder);
}

// --- piecewise-Chebyshev memoization of the quadrature values ------------

struct ChebTable {
    double t_lo, t_hi;
    int panels;
    int degree;
    std::vector<double> coeffs; // panels x degree

    double eval(double t) const
    {
        const double w = (t_hi - t_lo) / panels;
        int p = std::min(panels - 1, std::max(0, int((t - t_lo) / w)));
        double a = t_lo + p * w;
        double x = 2.0 * (t - a) / w - 1.0;
        // Clenshaw
        const double* c = &coeffs[std::size_t(p) * degree];
        double b1 = 0.0, b2 = 0.0;
        for (int k = degree - 1; k >= 1; --k) {
            double b0 = 2.0 * x * b1 - b2 + c[k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + c[0];
    }
};

template <class F>
ChebTable build_cheb(F&& f, double t_lo, double t_hi, int panels, int degree)
{
    ChebTable tab;
    tab.t_lo = t_lo;
    tab.t_hi = t_hi;
    tab.panels = panels;
    tab.degree = degree;
    tab.coeffs.assign(std::size_t(panels) * degree, 0.0);
    const double w = (t_hi - t_lo) / panels;
    std::vector<double> vals(static_cast<std::size_t>(degree), 0.0);
    for (int p = 0; p < panels; ++p) {
        double a = t_lo + p * w;
        for (int i = 0; i < degree; ++i) {
            double x = std::cos(M_PI * (i + 0.5) / degree);
            vals[std::size_t(i)] = f(a + 0.5 * w * (x + 1.0));
        }
        for (int k = 0; k < degree; ++k) {
            double sum = 0.0;
            for (int i = 0; i < degree; ++i)
                sum += vals[std::size_t(i)] * std::cos(M_PI * k * (i + 0.5) / degree);
            tab.coeffs[std::size_t(p) * degree + k] = (k == 0 ? 1.0 : 2.0) * sum / degree;
        }
    }
    return tab;
}

constexpr double kCacheSmin = 1e-14;
constexpr double kCacheSmax = 1e6;

const ChebTable& j_table()
{
    static ChebTable tab = build_cheb(
        [](double t) { return eval_J(std::exp(t), 1e-13); },
        std::log(kCacheSmin), std::log(kCacheSmax), 128, 18);
    return tab;
}

// cache s * J'(s), which stays O(1) across the whole range
const ChebTable& jp_table()
{
    static ChebTable tab = build_cheb(
        [](double t) {
            double s = std::exp(t);
            return s * eval_J_deriv(s, 1e-13);
        },
        std::log(kCacheSmin), std::log(kCacheSmax), 128, 18);
    return tab;
}

} // namespace

JSeriesCoeffs j_series_coeffs()
{
    const double ln8 = std::log(8.0);
    JSeriesCoeffs c;
    c.A = {0.5, 3.0 / 32.0, -15.0 / 2048.0, 105.0 / 98304.0};
    c.B = {ln8 - 2.0, -1.0 / 16.0 + (3.0 / 16.0) * ln8,
           31.0 / 2048.0 - (15.0 / 1024.0) * ln8};
    return c;
}

double eval_J(double s, double tol)
{
    if (!(s > 0.0))
        throw std::domain_error("eval_J: requires s > 0");
    auto f = [s](double t) {
        double u = std::sin(0.5 * t);
        return std::cos(t) / std::sqrt(s + 4.0 * u * u);
    };
    return converge_on_graded_mesh(f, s, tol);
}

double eval_J_deriv(double s, double tol)
{
    if (!(s > 0.0))
        throw std::domain_error("eval_J_deriv: requires s > 0");
    auto f = [s](double t) {
        double u = std::sin(0.5 * t);
        double d = s + 4.0 * u * u;
        return -0.5 * std::cos(t) / (d * std::sqrt(d));
    };
    return converge_on_graded_mesh(f, s, tol);
}

double eval_J_series(double s, int n_max)
{
    if (!(s > 0.0) || s >= 4.0)
        throw std::domain_error("eval_J_series: requires 0 < s < 4");
    if (n_max < 0 || n_max > 3)
        throw std::domain_error("eval_J_series: n_max must be in 0..3");
    const JSeriesCoeffs c = j_series_coeffs();
    const double L = std::abs(std::log(s));
    double sn = 1.0, log_part = 0.0, reg_part = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        log_part += c.A[std::size_t(n)] * sn;
        if (n <= 2)
            reg_part += c.B[std::size_t(n)] * sn;
        sn *= s;
    }
    return L * log_part + reg_part;
}

double check_J_ode(double s, double h, double quad_tol)
{
    if (!(s > 0.0))
        throw std::domain_error("check_J_ode: requires s > 0");
    if (h <= 0.0)
        h = std::max(1e-4, 1e-3 * s);
    if (!(s - h > 0.0))
        throw std::domain_error("check_J_ode: step too large");
    // All three evaluations share one mesh, so the quadrature error is a
    // smooth function of s and cancels in the differences.
    int m = 1;
    {
        auto f = [s](double t) {
            double u = std::sin(0.5 * t);
            return std::cos(t) / std::sqrt(s + 4.0 * u * u);
        };
        converge_on_graded_mesh(f, s, quad_tol, &m);
    }
    const auto breaks = graded_mesh(0.0, M_PI, grading_levels(s), 2 * m);
    const double jm = eval_J_on_mesh(s - h, breaks);
    const double j0 = eval_J_on_mesh(s, breaks);
    const double jp = eval_J_on_mesh(s + h, breaks);
    const double d1 = (jp - jm) / (2.0 * h);
    const double d2 = (jp - 2.0 * j0 + jm) / (h * h);
    return std::abs(s * (s + 4.0) * d2 + 2.0 * (s + 2.0) * d1 - 0.75 * j0);
}

double legendre_Q_half(double x)
{
    if (!(x > 1.0))
        throw std::domain_error("legendre_Q_half: requires x > 1");
    const double s = 2.0 * (x - 1.0);
    auto f = [x](double t) {
        double u = std::sin(0.5 * t);
        return std::cos(t) / std::sqrt(2.0 * x - 2.0 + 4.0 * u * u);
    };
    return converge_on_graded_mesh(f, s, 1e-12);
}

double fast_J(double s)
{
    if (s >= kCacheSmin && s <= kCacheSmax)
        return j_table().eval(std::log(s));
    return eval_J(s);
}

double fast_J_deriv(double s)
{
    if (s >= kCacheSmin && s <= kCacheSmax)
        return jp_table().eval(std::log(s)) / s;
    return eval_J_deriv(s);
}

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

double digamma(double x)
{
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("digamma: pole at nonpositive integer");
    double result = 0.0;
    if (x < 0.0) {
        // reflection psi(x) = psi(1-x) - pi cot(pi x)
        return digamma(1.0 - x) - M_PI / std::tan(M_PI * x);
    }
    while (x < 12.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series
    const double inv = 1.0 / x, inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv
        - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))));
    return result;
}

} // namespace leapfrog::specfun
