#include "leapfrog/modeone.hpp"
#include "leapfrog/filaments.hpp"
#include "leapfrog/ode.hpp"
#include "leapfrog/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace leapfrog::modeone {

namespace {

/// Fourth-order cumulative integration on the uniform grid: each segment
/// integrates the cubic through its four nearest nodes. Returns the node
/// weights of segment k (applied to nodes k-1..k+2, with one-sided stencils
/// at the ends).
void segment_weights(std::size_t k, std::size_t n_seg, double h,
                     std::size_t idx[4], double w[4])
{
    if (k == 0) {
        idx[0] = 0; idx[1] = 1; idx[2] = 2; idx[3] = 3;
        w[0] = 9.0 * h / 24.0; w[1] = 19.0 * h / 24.0;
        w[2] = -5.0 * h / 24.0; w[3] = h / 24.0;
    } else if (k == n_seg - 1) {
        idx[0] = k - 2; idx[1] = k - 1; idx[2] = k; idx[3] = k + 1;
        w[0] = h / 24.0; w[1] = -5.0 * h / 24.0;
        w[2] = 19.0 * h / 24.0; w[3] = 9.0 * h / 24.0;
    } else {
        idx[0] = k - 1; idx[1] = k; idx[2] = k + 1; idx[3] = k + 2;
        w[0] = -h / 24.0; w[1] = 13.0 * h / 24.0;
        w[2] = 13.0 * h / 24.0; w[3] = -h / 24.0;
    }
}

/// Cumulative integral of samples (value at node i = integral node 0 -> i).
std::vector<double> cumint(const std::vector<double>& v, double h)
{
    std::vector<double> out(v.size(), 0.0);
    const std::size_t n_seg = v.size() - 1;
    for (std::size_t k = 0; k < n_seg; ++k) {
        std::size_t idx[4];
        double w[4];
        segment_weights(k, n_seg, h, idx, w);
        double seg = 0.0;
        for (int a = 0; a < 4; ++a)
            seg += w[a] * v[idx[a]];
        out[k + 1] = out[k] + seg;
    }
    return out;
}

/// Dense matrix of the cumulative rule: (W v)_i = cumint(v)_i.
std::vector<double> cumint_matrix(std::size_t n, double h)
{
    std::vector<double> W(n * n, 0.0);
    const std::size_t n_seg = n - 1;
    for (std::size_t k = 0; k < n_seg; ++k) {
        std::size_t idx[4];
        double w[4];
        segment_weights(k, n_seg, h, idx, w);
        // row k+1 = row k + segment weights
        for (std::size_t j = 0; j < n; ++j)
            W[(k + 1) * n + j] = W[k * n + j];
        for (int a = 0; a < 4; ++a)
            W[(k + 1) * n + idx[a]] += w[a];
    }
    return W;
}

void check_grid(const CoefficientTriple& c, std::size_t g_size)
{
    if (c.phi.size() != g_size || c.rho1.size() != g_size || c.rho2.size() != g_size
        || c.rho3.size() != g_size)
        throw std::domain_error("modeone: grid size mismatch");
}

/// Dense LU with partial pivoting; solves A x = b in place.
std::vector<double> lu_solve(std::vector<double> A, std::vector<double> b)
{
    const std::size_t n = b.size();
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i)
        piv[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(A[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double v = std::abs(A[i * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best < 1e-300)
            throw std::runtime_error("modeone: singular Nystrom matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(A[k * n + j], A[p * n + j]);
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            double m = A[i * n + k] / A[k * n + k];
            A[i * n + k] = m;
            if (m == 0.0)
                continue;
            for (std::size_t j = k + 1; j < n; ++j)
                A[i * n + j] -= m * A[k * n + j];
            b[i] -= m * b[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j)
            s -= A[i * n + j] * b[j];
        b[i] = s / A[i * n + i];
    }
    return b;
}

} // namespace

CoefficientTriple build_coefficients(double lambda, double kappa, int n_grid)
{
    if (n_grid < 16 || n_grid % 2 != 0)
        throw std::domain_error("build_coefficients: n_grid must be even and >= 16");
    CoefficientTriple c;
    c.T0 = filaments::period_T0(lambda, kappa);
    const std::size_t n = std::size_t(n_grid);
    c.phi.resize(n + 1);
    c.rho1.resize(n + 1);
    c.rho2.resize(n + 1);
    c.rho3.resize(n + 1);

    const filaments::PhysicalParams prm(1e-3, kappa, lambda);
    std::vector<double> alpha(n + 1), h2chk(n + 1);
    filaments::ScaledState y{lambda, 0.0};
    for (std::size_t i = 0; i <= n; ++i) {
        const double phi = 2.0 * M_PI * double(i) / double(n_grid);
        c.phi[i] = phi;
        if (i > 0)
            y = filaments::flow_scaled(y, prm, filaments::Model::limiting,
                                       c.T0 * c.phi[i - 1] / (2.0 * M_PI),
                                       c.T0 * phi / (2.0 * M_PI), 1e-12);
        const double r2 = y.x1 * y.x1 + y.x2 * y.x2;
        alpha[i] = y.x1 * y.x2 / (r2 * r2);
        h2chk[i] = (y.x1 * y.x1 - y.x2 * y.x2) / (r2 * r2);
    }
    const double h = 2.0 * M_PI / double(n_grid);
    const std::vector<double> f3_raw = cumint(alpha, h);
    for (std::size_t i = 0; i <= n; ++i) {
        const double f3 = c.T0 / M_PI * f3_raw[i];
        c.rho1[i] = std::exp(-f3);
        c.rho3[i] = std::exp(-f3);
        c.rho2[i] = c.T0 * c.T0 * h2chk[i] * std::exp(2.0 * f3)
            / (64.0 * M_PI * M_PI * kappa);
    }
    return c;
}

std::vector<double> apply_T(const std::vector<double>& g, const CoefficientTriple& c,
                            double rho2_scale)
{
    check_grid(c, g.size());
    const std::size_t n = g.size() - 1;
    const double h = 2.0 * M_PI / double(n);
    std::vector<double> inner(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        inner[i] = c.rho3[i] * g[i];
    inner = cumint(inner, h);
    for (std::size_t i = 0; i < g.size(); ++i)
        inner[i] *= c.rho2[i];
    inner = cumint(inner, h);
    for (std::size_t i = 0; i < g.size(); ++i)
        inner[i] *= rho2_scale * c.rho1[i];
    return inner;
}

InvertResult invert_IminusT(const std::vector<double>& rhs, const CoefficientTriple& c,
                            double rho2_scale)
{
    check_grid(c, rhs.size());
    const std::size_t n = rhs.size();
    const double h = 2.0 * M_PI / double(n - 1);

    // T = rho2_scale diag(rho1) W diag(rho2) W diag(rho3), W the cumulative rule
    const std::vector<double> W = cumint_matrix(n, h);
    std::vector<double> inner(n * n, 0.0); // W diag(rho3)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inner[i * n + j] = W[i * n + j] * c.rho3[j];
    std::vector<double> A(n * n, 0.0); // I - T
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double t = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double wik = W[i * n + k];
                if (wik != 0.0)
                    t += wik * c.rho2[k] * inner[k * n + j];
            }
            A[i * n + j] = (i == j ? 1.0 : 0.0) - rho2_scale * c.rho1[i] * t;
        }
    }
    InvertResult out;
    out.solution = lu_solve(std::move(A), rhs);
    const auto Tu = apply_T(out.solution, c, rho2_scale);
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        resid = std::max(resid, std::abs(out.solution[i] - Tu[i] - rhs[i]));
    out.residual = resid;
    return out;
}

double nonresonance_P(const CoefficientTriple& c, double rho2_scale)
{
    const auto u = invert_IminusT(c.rho1, c, rho2_scale).solution;
    const std::size_t n = c.phi.size() - 1;
    const double h = 2.0 * M_PI / double(n);
    std::vector<double> inner(c.phi.size());
    for (std::size_t i = 0; i < c.phi.size(); ++i)
        inner[i] = c.rho3[i] * u[i];
    inner = cumint(inner, h);
    for (std::size_t i = 0; i < c.phi.size(); ++i)
        inner[i] *= rho2_scale * c.rho2[i];
    const auto outer = cumint(inner, h);
    return 1.0 + outer[n / 2]; // node n/2 sits exactly at pi
}

double nonresonance_P(double lambda, double kappa, int n_grid, double rho2_scale)
{
    return nonresonance_P(build_coefficients(lambda, kappa, n_grid), rho2_scale);
}

double star_constant_b(const std::vector<double>& g, const CoefficientTriple& c,
                       double rho2_scale)
{
    check_grid(c, g.size());
    const std::size_t n = g.size() - 1;
    const double h = 2.0 * M_PI / double(n);
    std::vector<double> inner(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        inner[i] = c.rho3[i] * g[i];
    inner = cumint(inner, h);
    for (std::size_t i = 0; i < g.size(); ++i)
        inner[i] *= rho2_scale * c.rho2[i];
    const auto outer = cumint(inner, h);
    return -0.5 * outer[n / 2];
}

std::vector<ScanRow> scan_table(double kappa, double lambda_lo, double lambda_hi,
                                int n_points, int n_grid)
{
    if (!(lambda_hi > lambda_lo) || n_points < 2)
        throw std::domain_error("scan_table: bad range");
    std::vector<ScanRow> rows(static_cast<std::size_t>(n_points));
    parallel_for(std::size_t(n_points), [&](std::size_t i) {
        const double lambda = lambda_lo
            + (lambda_hi - lambda_lo) * double(i) / double(n_points - 1);
        rows[i] = {lambda, nonresonance_P(lambda, kappa, n_grid), false};
    });
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        rows[i].bracket = rows[i].P_value * rows[i + 1].P_value < 0.0;
    return rows;
}

std::vector<ZeroBracket> scan_zeros(double kappa, double lambda_lo, double lambda_hi,
                                    int n_points, int n_grid)
{
    const auto rows = scan_table(kappa, lambda_lo, lambda_hi, n_points, n_grid);
    std::vector<ZeroBracket> out;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (!rows[i].bracket)
            continue;
        double lo = rows[i].lambda, hi = rows[i + 1].lambda;
        double f_lo = rows[i].P_value;
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = nonresonance_P(mid, kappa, n_grid);
            if (f_lo * f_mid <= 0.0)
                hi = mid;
            else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        out.push_back({lo, hi, 0.5 * (lo + hi)});
    }
    return out;
}

} // namespace leapfrog::modeone
