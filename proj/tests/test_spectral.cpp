#include <doctest.h>

#include "leapfrog/fourier.hpp"
#include "leapfrog/gauss.hpp"
#include "leapfrog/integrals.hpp"
#include "leapfrog/transport.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

using namespace leapfrog;
using spectral::Fourier2;
using spectral::FourierSeries;
using spectral::Part;

namespace {

// principal-value quadrature of the cot kernel, singularity subtracted
double hilbert_pv(const FourierSeries& h, double theta, int n = 1024)
{
    const FourierSeries hp = h.derivative();
    double sum = 2.0 * hp.eval(theta); // limit of the subtracted integrand
    for (int k = 1; k < n; ++k) {
        const double eta = theta + 2.0 * M_PI * k / n;
        sum += (h.eval(eta) - h.eval(theta)) / std::tan(0.5 * (eta - theta));
    }
    return sum / n;
}

// defining integral of I_{m,n} on a mesh graded into the log singularity
double Inm_quadrature(int m, int n)
{
    auto f = [m, n](double eta) {
        const double s = std::sin(0.5 * eta);
        return -std::pow(s, m) * std::log(s) * std::cos(n * eta) / M_PI;
    };
    return gauss_mesh(f, graded_mesh(0.0, M_PI, 42, 4), 16);
}

double trap_mean(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / double(v.size());
}

} // namespace

TEST_CASE("projections are orthogonal mode picks")
{
    FourierSeries f = FourierSeries::cosine(1);
    f += FourierSeries::sine(5, 2.0);
    const FourierSeries pc = spectral::project(f, 1, Part::cos);
    CHECK(pc.cos_coeff(1) == 1.0);
    CHECK(pc.sin_coeff(1) == 0.0);
    CHECK(pc.max_mode() == 1);
    const FourierSeries ps = spectral::project(FourierSeries::cosine(1), 1, Part::sin);
    CHECK(ps.l2_norm() == 0.0);
}

TEST_CASE("grid-sampling coefficient extraction agrees with the stored modes")
{
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries f;
    for (int k = 1; k <= 16; ++k)
        f.add_real_pair(k, u(rng), u(rng));
    std::vector<double> samples;
    const int n = 64;
    for (int i = 0; i < n; ++i)
        samples.push_back(f.eval(2.0 * M_PI * i / n));
    const FourierSeries g = FourierSeries::from_samples(samples, 16);
    for (int k = 1; k <= 16; ++k) {
        CHECK(std::abs(g.cos_coeff(k) - f.cos_coeff(k)) < 1e-12);
        CHECK(std::abs(g.sin_coeff(k) - f.sin_coeff(k)) < 1e-12);
    }
}

TEST_CASE("Hilbert transform: multiplier actions")
{
    bool dropped = false;
    const FourierSeries h = spectral::hilbert(FourierSeries::cosine(3), &dropped);
    CHECK(!dropped);
    CHECK(h.sin_coeff(3) == -1.0);
    CHECK(h.cos_coeff(3) == 0.0);

    const FourierSeries one = spectral::hilbert(FourierSeries::constant(1.0), &dropped);
    CHECK(dropped);
    CHECK(one.l2_norm() == 0.0);
}

TEST_CASE("Hilbert transform: PV quadrature oracle on trig polynomials")
{
    for (int mode = 1; mode <= 8; ++mode) {
        const FourierSeries f = FourierSeries::cosine(mode, 1.3);
        const FourierSeries Hf = spectral::hilbert(f);
        for (double theta : {0.0, 0.7, 2.9}) {
            CHECK(std::abs(hilbert_pv(f, theta) - Hf.eval(theta)) < 1e-8);
        }
        const FourierSeries g = FourierSeries::sine(mode, -0.8);
        const FourierSeries Hg = spectral::hilbert(g);
        CHECK(std::abs(hilbert_pv(g, 1.1) - Hg.eval(1.1)) < 1e-8);
    }
}

TEST_CASE("Hilbert transform is a skew involution up to sign")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries f, g;
    for (int k = 1; k <= 6; ++k) {
        f.add_real_pair(k, u(rng), u(rng));
        g.add_real_pair(k, u(rng), u(rng));
    }
    // H^2 = -Id on zero-mean series
    const FourierSeries h2 = spectral::hilbert(spectral::hilbert(f));
    for (int k = -6; k <= 6; ++k)
        CHECK(std::abs(h2.coeff(k) + f.coeff(k)) < 1e-15);
    // skewness <Hu, v> = -<u, Hv>
    auto inner = [](const FourierSeries& a, const FourierSeries& b) {
        double s = 0.0;
        for (const auto& [k, c] : a.modes())
            s += (c * std::conj(b.coeff(k))).real();
        return s;
    };
    CHECK(std::abs(inner(spectral::hilbert(f), g) + inner(f, spectral::hilbert(g)))
          < 1e-14);
}

TEST_CASE("Lambda_2 eigenvalues: closed form, quadrature, and d_j")
{
    for (int j = 2; j <= 10; ++j) {
        // flipped-sign table convention: -I_{2,j} = 1/(4 (j^2-1) j)
        CHECK(std::abs(-spectral::Inm(2, j) - 1.0 / (4.0 * (j * j - 1.0) * j)) < 1e-14);
        CHECK(std::abs(spectral::Inm(2, j) - Inm_quadrature(2, j)) < 1e-10);
    }
    // d_theta Lambda_2 [e^{2 i theta}] = i d_2 e^{2 i theta}, d_2 = -1/12
    FourierSeries e2;
    e2.set_coeff(2, 1.0);
    const FourierSeries d = spectral::lambda_m(e2, 2).derivative();
    const std::complex<double> dj = d.coeff(2) / std::complex<double>(0.0, 1.0);
    CHECK(std::abs(dj.real() + 1.0 / 12.0) < 1e-14);
    CHECK(std::abs(dj.imag()) < 1e-15);
}

TEST_CASE("I_{m,n} closed form vs quadrature for m <= 4, |n| <= 12")
{
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 12; ++n) {
            CHECK(std::abs(spectral::Inm(m, n) - Inm_quadrature(m, n)) < 1e-9);
            CHECK(spectral::Inm(m, -n) == spectral::Inm(m, n));
        }
}

TEST_CASE("I_{m,n} large-n asymptotics (even and odd laws)")
{
    // m = 0: exactly 1/(2n)
    for (int n : {2, 10, 100})
        CHECK(std::abs(spectral::Inm(0, n) * n - 0.5) < 1e-12);
    // even m = 2k: n^{m+1} I -> 2^{-(2k+1)} (2k)! (-1)^k
    CHECK(std::abs(std::pow(200.0, 3) * spectral::Inm(2, 200) - (-0.25)) < 1e-4);
    CHECK(std::abs(std::pow(200.0, 5) * spectral::Inm(4, 200) - 0.75) < 2e-3);
    // odd m = 2k+1: n^{m+1} I / ln n -> (2k+1)! (-1)^{k+1} / (pi 2^{2k+1})
    // (defining-integral sign convention, matching the even-m law)
    auto odd_scaled = [](int m, int n) {
        return std::pow(double(n), m + 1) * spectral::Inm(m, n) / std::log(double(n));
    };
    const double c1 = -1.0 / (2.0 * M_PI);
    CHECK(std::abs(odd_scaled(1, 200) - c1) < std::abs(odd_scaled(1, 50) - c1));
    const double c3 = 6.0 / (8.0 * M_PI);
    CHECK(std::abs(odd_scaled(3, 200) - c3) < std::abs(odd_scaled(3, 50) - c3));
}

TEST_CASE("shift operator S: mode actions and defining integral")
{
    const double p11 = 0.37;
    const double g3 = 0.125 * std::pow(2.0 * p11, -0.75);
    // d_theta S[cos] = g3 sin(2 theta); d_theta S[sin 2] = (g3/2) cos(theta)
    const FourierSeries a = spectral::op_S(FourierSeries::cosine(1), g3).derivative();
    CHECK(std::abs(a.sin_coeff(2) - g3) < 1e-15);
    CHECK(a.cos_coeff(2) == 0.0);
    const FourierSeries b = spectral::op_S(FourierSeries::sine(2), g3).derivative();
    CHECK(std::abs(b.cos_coeff(1) - 0.5 * g3) < 1e-15);
    const FourierSeries c = spectral::op_S(FourierSeries::sine(1), g3).derivative();
    CHECK(std::abs(c.cos_coeff(2) - g3) < 1e-15);

    // direct quadrature of the defining integral
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries h;
    for (int k = 1; k <= 4; ++k)
        h.add_real_pair(k, u(rng), u(rng));
    const FourierSeries Sh = spectral::op_S(h, g3);
    const int n = 512;
    for (double theta : {0.3, 1.7, 4.0}) {
        std::vector<double> vals;
        for (int i = 0; i < n; ++i) {
            const double eta = 2.0 * M_PI * i / n;
            vals.push_back(-(g3) * (std::cos(theta + 2.0 * eta) + std::cos(2.0 * theta + eta))
                           * h.eval(eta));
        }
        CHECK(std::abs(trap_mean(vals) - Sh.eval(theta)) < 1e-8);
    }
}

TEST_CASE("H_{u,0}: mode actions and defining integral")
{
    const double p11 = 0.42;
    const double coeff = std::pow(2.0 * p11, -0.75);
    const double g3 = 0.125 * coeff;
    const FourierSeries a = spectral::op_Hu0(FourierSeries::cosine(1), coeff);
    CHECK(std::abs(a.sin_coeff(2) + 3.0 * g3) < 1e-14);
    const FourierSeries b = spectral::op_Hu0(FourierSeries::sine(1), coeff);
    CHECK(std::abs(b.cos_coeff(2) - 3.0 * g3) < 1e-14);
    const FourierSeries c = spectral::op_Hu0(FourierSeries::cosine(2), coeff);
    CHECK(std::abs(c.sin_coeff(1) + 3.0 / 16.0 * coeff) < 1e-14);
    CHECK(std::abs(c.sin_coeff(3) + 5.0 / 16.0 * coeff) < 1e-14);

    // defining integral: -(coeff/2) d_theta avg ln|sin((t-e)/2)|(cos t + cos e) h(e)
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries h;
    for (int k = 1; k <= 3; ++k)
        h.add_real_pair(k, u(rng), u(rng));
    const FourierSeries Hh = spectral::op_Hu0(h, coeff);
    const int n = 128;
    std::vector<double> inner(n);
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * M_PI * i / n;
        auto f = [&](double d) {
            const double eta = theta + d;
            return std::log(std::abs(std::sin(0.5 * d)))
                * (std::cos(theta) + std::cos(eta)) * h.eval(eta) / (2.0 * M_PI);
        };
        inner[std::size_t(i)] = gauss_mesh(f, graded_mesh(0.0, M_PI, 36, 2), 14)
            + gauss_mesh([&](double d) { return f(-d); }, graded_mesh(0.0, M_PI, 36, 2), 14);
    }
    const FourierSeries inner_series = FourierSeries::from_samples(inner, 8);
    const FourierSeries oracle = inner_series.derivative();
    for (double theta : {0.5, 2.2}) {
        CHECK(std::abs(-0.5 * coeff * oracle.eval(theta) - Hh.eval(theta)) < 1e-8);
    }
}

TEST_CASE("Q localizes on mode one and matches its integral form")
{
    spectral::ModeOneCouplings cpl{0.4, 0.011, -0.007, 0.019, -0.013};
    // pure mode-3 input: d_theta Q = 0
    const FourierSeries z =
        spectral::op_Q(FourierSeries::cosine(3), FourierSeries::sine(3), cpl);
    CHECK(z.l2_norm() == 0.0);

    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FourierSeries h, hs;
    for (int k = 1; k <= 3; ++k) {
        h.add_real_pair(k, u(rng), u(rng));
        hs.add_real_pair(k, u(rng), u(rng));
    }
    const FourierSeries Qh = spectral::op_Q(h, hs, cpl);
    // integral form with the Hessian couplings folded into q1..q4
    const int n = 512;
    for (double theta : {0.4, 3.1}) {
        std::vector<double> vals;
        for (int i = 0; i < n; ++i) {
            const double eta = 2.0 * M_PI * i / n;
            const double term1 = -0.125 * std::pow(2.0 * cpl.p11, -1.5)
                * (std::cos(theta) * std::cos(eta) + 3.0 * std::sin(theta) * std::sin(eta))
                * h.eval(eta);
            const double hess = -2.0 * cpl.q1 * std::cos(theta) * std::cos(eta)
                - 2.0 * cpl.q2 * std::cos(theta) * std::sin(eta)
                + 2.0 * cpl.q3 * std::sin(theta) * std::cos(eta)
                + 2.0 * cpl.q4 * std::sin(theta) * std::sin(eta);
            vals.push_back(term1 + hess * hs.eval(eta));
        }
        CHECK(std::abs(trap_mean(vals) - Qh.eval(theta)) < 1e-8);
    }
}

TEST_CASE("disk integral identities")
{
    const auto results = spectral::integral_identities(2);
    REQUIRE(results.size() == 4);
    for (const auto& r : results) {
        INFO(r.name, " computed=", r.computed, " expected=", r.expected);
        CHECK(r.deviation < 1e-6);
    }
}

TEST_CASE("transport inversion: single mode, random clear set, resonance")
{
    using spectral::DiophantineParams;
    using spectral::Fourier2;

    DiophantineParams dio{0.5, 1.5, 32};

    SUBCASE("single mode (0,1) with c = -1/2")
    {
        Fourier2 h;
        h.set_coeff(0, 1, 1.0);
        h.set_coeff(0, -1, 1.0);
        const auto res = spectral::transport_invert(h, 1e-3, 1.0, -0.5, dio);
        CHECK(res.all_clear);
        CHECK(res.residual_norm == 0.0);
        // rho = -i/(-1/2) h = 2 i per mode
        CHECK(std::abs(res.solution.coeff(0, 1) - std::complex<double>(0.0, 2.0)) < 1e-15);
    }

    SUBCASE("zero theta-average contract is enforced")
    {
        Fourier2 bad;
        bad.add_real_cos(2, 0, 1.0);
        CHECK_THROWS_AS(spectral::transport_invert(bad, 1e-3, 1.0, -0.5, dio),
                        std::domain_error);
    }

    SUBCASE("random clear 32x32 block has zero substitution residual")
    {
        std::mt19937_64 rng(2025);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Fourier2 h;
        for (int l = -16; l <= 16; ++l)
            for (int j = 1; j <= 16; ++j) {
                h.add_real_cos(l, j, u(rng));
                h.add_real_sin(l, j, u(rng));
            }
        // c irrational-ish and eps1 small: all divisors clear the plateau
        const double eps1 = 1e-4, omega = 1.0, c = 1.0 / std::sqrt(2.0);
        DiophantineParams loose{1e-3, 1.5, 16};
        const auto res = spectral::transport_invert(h, eps1, omega, c, loose);
        CHECK(res.all_clear);
        CHECK(res.residual_norm < 1e-12);
        // direct substitution: (eps1 w d_phi + c d_theta) rho = h
        const auto lhs_phi = res.solution.derivative_phi();
        const auto lhs_theta = res.solution.derivative_theta();
        double max_err = 0.0;
        for (const auto& [key, hc] : h.modes()) {
            const auto [l, j] = key;
            const auto lhs = eps1 * omega * lhs_phi.coeff(l, j)
                + c * lhs_theta.coeff(l, j);
            max_err = std::max(max_err, std::abs(lhs - hc));
        }
        CHECK(max_err < 1e-12);
    }

    SUBCASE("constructed resonance is cut exactly")
    {
        // make mode (3, 2) exactly resonant: eps1*w*3 + 2 c = 0
        const double eps1 = 0.5, omega = 1.0;
        const double c = -eps1 * omega * 3.0 / 2.0;
        Fourier2 h;
        h.add_real_cos(3, 2, 1.0);
        h.add_real_cos(1, 1, 0.5); // divisor 0.5 - 0.75 = -0.25, clears nu = 0.1
        spectral::DiophantineParams tight{0.1, 1.5, 8};
        const auto res = spectral::transport_invert(h, eps1, omega, c, tight);
        CHECK(!res.all_clear);
        CHECK(res.solution.coeff(3, 2) == std::complex<double>(0.0));
        CHECK(std::abs(res.solution.coeff(1, 1)) > 0.0);
        bool found = false;
        for (auto [l, j] : res.cut_modes)
            found = found || (l == 3 && j == 2);
        CHECK(found);
        // residual equals the norm of the cut component
        Fourier2 cut;
        cut.add_real_cos(3, 2, 1.0);
        CHECK(res.residual_norm == doctest::Approx(cut.l2_norm()).epsilon(1e-12));
    }
}

TEST_CASE("divisor scan: vacuous threshold, exact resonance, admissibility")
{
    using spectral::DiophantineParams;
    std::vector<double> grid;
    for (int i = 0; i < 40; ++i)
        grid.push_back(0.5 + 1.5 * i / 39.0);

    auto omega_fn = [](double lambda) { return 1.0 / (1.0 + lambda); };

    SUBCASE("nu -> 0 admits everything")
    {
        DiophantineParams dio{1e-300, 1.5, 8};
        const auto res = spectral::divisor_scan(1e-3, omega_fn,
                                                [](double) { return -0.5; }, grid, dio);
        CHECK(res.admissible_fraction == 1.0);
    }
    SUBCASE("rational tie between omega and c fails everywhere")
    {
        // c = -eps1 * omega: mode (1,1) is exactly resonant for every lambda
        const double eps1 = 1e-3;
        DiophantineParams dio{0.1, 1.5, 4};
        const auto res = spectral::divisor_scan(
            eps1, [](double) { return 2.0; }, [eps1](double) { return -2.0 * eps1; },
            grid, dio);
        CHECK(res.admissible_fraction == 0.0);
        for (const auto& row : res.rows)
            CHECK(row.worst_divisor == 0.0);
    }
}

TEST_CASE("cutoff plateau edges")
{
    CHECK(spectral::divisor_cutoff(0.0) == 0.0);
    CHECK(spectral::divisor_cutoff(1.0 / 3.0) == 0.0);
    CHECK(spectral::divisor_cutoff(0.5) == 1.0);
    CHECK(spectral::divisor_cutoff(-0.7) == 1.0);
    const double mid = spectral::divisor_cutoff(0.42);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
}
