#include "leapfrog/contour.hpp"
#include "leapfrog/gauss.hpp"
#include "leapfrog/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace leapfrog::contour {

namespace {

using kernel::HalfPlanePoint;

double wrap_pi(double x)
{
    while (x > M_PI)
        x -= 2.0 * M_PI;
    while (x < -M_PI)
        x += 2.0 * M_PI;
    return x;
}

Vec2 ellipse_axis(double p, double theta)
{
    const double a = std::pow(2.0 * p, 0.25);
    return {a * std::cos(theta), std::sin(theta) / a};
}

/// theta-slice of a (phi,theta) series at fixed phi.
FourierSeries theta_slice(const Fourier2& f, double phi)
{
    FourierSeries g;
    for (const auto& [key, c] : f.modes()) {
        const auto [l, j] = key;
        g.set_coeff(j, g.coeff(j) + c * std::exp(std::complex<double>(0.0, l * phi)));
    }
    g.drop_small();
    return g;
}

/// Mesh on [0, hi] graded toward hi.
std::vector<double> mesh_toward_end(double hi, int levels, int m)
{
    auto mesh = graded_mesh(0.0, hi, levels, m);
    for (auto& x : mesh)
        x = hi - x;
    std::reverse(mesh.begin(), mesh.end());
    return mesh;
}

struct SelfIntegrand {
    Vec2 target;     // gamma(phi, theta)
    Vec2 base;       // P1(phi)
    double p11;
    double eps;

    double operator()(double rho, double eta) const
    {
        const Vec2 z = ellipse_axis(p11, eta);
        HalfPlanePoint src{base.x + eps * rho * z.x, base.y + eps * rho * z.y};
        return kernel::eval_G({target.x, target.y}, src, true) * rho;
    }
};

} // namespace

double RingShape::w(double phi, double theta) const
{
    const double v = 1.0 + 2.0 * eps * f.eval(phi, theta);
    if (!(v > 0.0))
        throw ShapeError("RingShape: 1 + 2 eps f must stay positive");
    return std::sqrt(v);
}

Vec2 boundary_gamma(const OrbitPhi& orbit, const RingShape& shape, int ring,
                    double phi, double theta, double Vshift)
{
    if (ring != 1 && ring != 2)
        throw std::domain_error("boundary_gamma: ring must be 1 or 2");
    const double L = orbit.params().log_eps();
    const double phi_eff = (ring == 1) ? phi : phi + M_PI;
    const Vec2 P = (ring == 1) ? orbit.P1(phi) : orbit.P2(phi);
    const double p = (ring == 1) ? orbit.p11(phi) : orbit.p21(phi);
    const double w = shape.w(phi_eff, theta);
    const Vec2 z = ellipse_axis(p, theta);
    return {P.x + shape.eps * w * z.x,
            P.y + shape.eps / L * Vshift + shape.eps * w * z.y};
}

double stream_Psi_self(const OrbitPhi& orbit, const RingShape& shape, double phi,
                       double theta, const QuadratureParams& q)
{
    const double eps = shape.eps;
    const double p11 = orbit.p11(phi);
    const Vec2 P1 = orbit.P1(phi);
    const double w_t = shape.w(phi, theta);
    const Vec2 zt = ellipse_axis(p11, theta);

    SelfIntegrand f{{P1.x + eps * w_t * zt.x, P1.y + eps * w_t * zt.y}, P1, p11, eps};

    const int m = q.resolution;
    const double d = q.near_width;

    // eta mesh centered at theta: geometric refinement inside [-d, d],
    // graded panels out to +-pi
    std::vector<double> eta_offsets;
    {
        auto near = graded_mesh(0.0, d, q.near_levels, m);
        auto far = graded_mesh(d, M_PI, 3, 2 * m); // widths grow away from d
        for (double x : near)
            eta_offsets.push_back(x);
        for (std::size_t i = 1; i < far.size(); ++i)
            eta_offsets.push_back(far[i]);
    }

    auto rho_integral = [&](double eta) {
        const double w_eta = shape.w(phi, eta);
        const double dist = std::abs(wrap_pi(eta - theta));
        int levels = 4;
        while (levels < 34 && std::ldexp(w_eta, -levels) > 0.25 * std::max(dist, 1e-9))
            ++levels;
        auto mesh = mesh_toward_end(w_eta, levels, m);
        return gauss_mesh([&](double rho) { return f(rho, eta); }, mesh, 12);
    };

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < eta_offsets.size(); ++k) {
        const double a = eta_offsets[k], b = eta_offsets[k + 1];
        total += gauss_panel([&](double u) { return rho_integral(theta + u); }, a, b, 12);
        total += gauss_panel([&](double u) { return rho_integral(theta - u); }, a, b, 12);
    }
    return std::sqrt(2.0) / (2.0 * M_PI) * total;
}

double stream_Psi_interaction(const OrbitPhi& orbit, const RingShape& shape,
                              double phi, double theta, double Uminus,
                              const QuadratureParams& q, int target_ring)
{
    if (target_ring != 1 && target_ring != 2)
        throw std::domain_error("stream_Psi_interaction: target_ring must be 1 or 2");
    const double eps = shape.eps;
    const double L = orbit.params().log_eps();
    const bool first = target_ring == 1;
    const double p_t = first ? orbit.p11(phi) : orbit.p21(phi);
    const double p_s = first ? orbit.p21(phi) : orbit.p11(phi);
    const Vec2 Pt = first ? orbit.P1(phi) : orbit.P2(phi);
    const Vec2 Ps = first ? orbit.P2(phi) : orbit.P1(phi);
    const double shift = first ? Uminus : -Uminus;
    const double phase_t = first ? phi : phi + M_PI;
    const double phase_s = first ? phi + M_PI : phi;

    const double w_t = shape.w(phase_t, theta);
    const Vec2 zt = ellipse_axis(p_t, theta);
    const HalfPlanePoint target{Pt.x + eps * w_t * zt.x,
                                Pt.y + eps / L * shift + eps * w_t * zt.y};

    const int m = q.resolution;
    auto inner = [&](double eta) {
        const double w_eta = shape.w(phase_s, eta);
        const Vec2 z = ellipse_axis(p_s, eta);
        auto g = [&](double rho) {
            HalfPlanePoint src{Ps.x + eps * rho * z.x, Ps.y + eps * rho * z.y};
            return kernel::eval_G(target, src, true) * rho;
        };
        return gauss_mesh(g, uniform_mesh(0.0, w_eta, 3 * m), 12);
    };
    const double total = gauss_mesh(inner, uniform_mesh(0.0, 2.0 * M_PI, 8 * m), 12);
    return std::sqrt(2.0) / (2.0 * M_PI) * total;
}

double stream_Psi(const OrbitPhi& orbit, const RingShape& shape, double phi,
                  double theta, double Uminus, const QuadratureParams& q)
{
    const double value = stream_Psi_self(orbit, shape, phi, theta, q)
        + stream_Psi_interaction(orbit, shape, phi, theta, Uminus, q);
    if (q.verify_tol > 0.0) {
        QuadratureParams fine = q;
        fine.verify_tol = 0.0;
        fine.resolution = 2 * q.resolution;
        fine.near_levels = q.near_levels + 2;
        const double refined = stream_Psi_self(orbit, shape, phi, theta, fine)
            + stream_Psi_interaction(orbit, shape, phi, theta, Uminus, fine);
        if (std::abs(refined - value) > q.verify_tol * std::max(1.0, std::abs(value)))
            throw QuadratureError("stream_Psi: refinement did not converge");
    }
    return value;
}

namespace {

/// Spectral derivative of samples on a uniform periodic grid.
std::vector<double> spectral_theta_derivative(const std::vector<double>& v)
{
    const int n = int(v.size());
    const auto f = FourierSeries::from_samples(v, n / 2 - 1);
    const auto d = f.derivative();
    std::vector<double> out(v.size());
    for (int i = 0; i < n; ++i)
        out[std::size_t(i)] = d.eval(2.0 * M_PI * i / n);
    return out;
}

} // namespace

std::vector<double> functional_F_grid(const OrbitPhi& orbit, const RingShape& shape,
                                      const FourierSeries& V1, const FourierSeries& V2,
                                      double phi, int n_theta,
                                      const QuadratureParams& q)
{
    const double eps = shape.eps;
    const double L = orbit.params().log_eps();
    const double omega = orbit.omega();
    const double p11 = orbit.p11(phi);
    const double dp11 = orbit.dp11_dphi(phi);
    const Vec2 dP1 = orbit.dP1_dphi(phi);
    const double V1dot = V1.derivative().eval(phi);
    const double Uminus = V1.eval(phi) - V2.eval(phi);

    std::vector<double> psi(static_cast<std::size_t>(n_theta), 0.0);
    for (int i = 0; i < n_theta; ++i)
        psi[std::size_t(i)] =
            stream_Psi(orbit, shape, phi, 2.0 * M_PI * i / n_theta, Uminus, q);
    const std::vector<double> dpsi = spectral_theta_derivative(psi);

    const FourierSeries f_theta = theta_slice(shape.f, phi);
    const FourierSeries df_dtheta = f_theta.derivative();
    const Fourier2 df_dphi2 = shape.f.derivative_phi();

    // d_theta{ (1 + 2 eps f) sin(2 theta) } as a series at this phi
    FourierSeries w2sin2 = FourierSeries::sine(2);
    {
        FourierSeries tmp = f_theta.product(FourierSeries::sine(2));
        tmp *= 2.0 * eps;
        w2sin2 += tmp;
    }
    const FourierSeries dw2sin2 = w2sin2.derivative();

    std::vector<double> F(static_cast<std::size_t>(n_theta), 0.0);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = 2.0 * M_PI * i / n_theta;
        const double w_t = shape.w(phi, theta);
        const Vec2 zt = ellipse_axis(p11, theta);
        const double a14 = std::pow(2.0 * p11, 0.25);
        const Vec2 dz{-a14 * std::sin(theta), std::cos(theta) / a14};
        const double dw = eps * df_dtheta.eval(theta) / w_t;
        const Vec2 dgamma{eps * (dw * zt.x + w_t * dz.x), eps * (dw * zt.y + w_t * dz.y)};
        const Vec2 i_dgamma{-dgamma.y, dgamma.x};
        const Vec2 A{omega * L * dP1.x, omega * (L * dP1.y + eps * V1dot)};

        F[std::size_t(i)] = eps * eps * eps * L * omega * df_dphi2.eval(phi, theta)
            + dpsi[std::size_t(i)] / std::sqrt(2.0 * p11)
            - (A.x * i_dgamma.x + A.y * i_dgamma.y)
            + eps * eps * L * omega * dp11 / (8.0 * p11) * dw2sin2.eval(theta);
    }
    return F;
}

double functional_F(const OrbitPhi& orbit, const RingShape& shape,
                    const FourierSeries& V1, const FourierSeries& V2, double phi,
                    double theta, int n_theta, const QuadratureParams& q)
{
    const auto grid = functional_F_grid(orbit, shape, V1, V2, phi, n_theta, q);
    return FourierSeries::from_samples(grid, n_theta / 2 - 1).eval(theta);
}

AuxAtPhi aux_at_phi(const OrbitPhi& orbit, double phi)
{
    using kernel::Arg;
    using kernel::grad_G;
    const auto& prm = orbit.params();
    const double L = prm.log_eps();
    const Vec2 P1v = orbit.P1(phi), P2v = orbit.P2(phi);
    const HalfPlanePoint P1{P1v.x, P1v.y}, P2{P2v.x, P2v.y};
    const double sep = std::hypot(P1.rho - P2.rho, P1.z - P2.z);
    const double h = 1e-4 * sep;

    auto g1 = [&](HalfPlanePoint a, HalfPlanePoint b) {
        return grad_G(a, b, Arg::first, true);
    };
    const double d2_r1r1 =
        (g1({P1.rho + h, P1.z}, P2).x - g1({P1.rho - h, P1.z}, P2).x) / (2.0 * h);
    const double d2_z1z1 =
        (g1({P1.rho, P1.z + h}, P2).y - g1({P1.rho, P1.z - h}, P2).y) / (2.0 * h);
    const double d2_r1z1 =
        (g1({P1.rho, P1.z + h}, P2).x - g1({P1.rho, P1.z - h}, P2).x) / (2.0 * h);
    const double d2_r1r2 =
        (g1(P1, {P2.rho + h, P2.z}).x - g1(P1, {P2.rho - h, P2.z}).x) / (2.0 * h);
    const double d2_r1z2 =
        (g1(P1, {P2.rho, P2.z + h}).x - g1(P1, {P2.rho, P2.z - h}).x) / (2.0 * h);
    const double d2_z1r2 =
        (g1(P1, {P2.rho + h, P2.z}).y - g1(P1, {P2.rho - h, P2.z}).y) / (2.0 * h);
    const double d2_z1z2 =
        (g1(P1, {P2.rho, P2.z + h}).y - g1(P1, {P2.rho, P2.z - h}).y) / (2.0 * h);

    const double p11 = P1.rho, p21 = P2.rho;
    const double s2 = std::sqrt(2.0);
    AuxAtPhi a;
    a.f2 = std::pow(2.0 * p11, -0.5) / s2 / L * d2_r1z1;
    a.h2 = -1.0 / std::sqrt(p11) / L * d2_z1z1;
    a.g2 = 0.25 * std::pow(2.0 * p11, -0.5)
        * (3.0 / (8.0 * p11) - 2.0 * std::sqrt(p11) / L * d2_r1r1
           + 1.0 / std::sqrt(p11) / L * d2_z1z1);
    a.g3 = 0.125 * std::pow(2.0 * p11, -0.75);
    a.q1 = -1.0 / s2 * std::pow(2.0 * p11, -0.25) * std::pow(2.0 * p21, 0.25) / L * d2_r1r2;
    a.q2 = -1.0 / s2 * std::pow(2.0 * p11, -0.25) * std::pow(2.0 * p21, -0.25) / L * d2_r1z2;
    a.q3 = 1.0 / s2 * std::pow(2.0 * p11, -0.75) * std::pow(2.0 * p21, 0.25) / L * d2_z1r2;
    a.q4 = 1.0 / s2 * std::pow(2.0 * p11, -0.75) * std::pow(2.0 * p21, -0.25) / L * d2_z1z2;

    const auto y = filaments::limiting_state_at_phi(prm.lambda, prm.kappa, phi);
    const double r2 = y.x1 * y.x1 + y.x2 * y.x2;
    a.alpha_check = y.x1 * y.x2 / (r2 * r2);
    a.h2_check = (y.x1 * y.x1 - y.x2 * y.x2) / (r2 * r2);
    a.b = 1.0 / (16.0 * prm.kappa) * (3.0 / (16.0 * prm.kappa) + a.h2_check);
    return a;
}

AuxFunctions aux_functions(const OrbitPhi& orbit, const std::vector<double>& phi_grid)
{
    AuxFunctions out;
    out.phi = phi_grid;
    for (double phi : phi_grid) {
        const AuxAtPhi a = aux_at_phi(orbit, phi);
        out.f2.push_back(a.f2);
        out.h2.push_back(a.h2);
        out.g2.push_back(a.g2);
        out.g3.push_back(a.g3);
        out.q1.push_back(a.q1);
        out.q2.push_back(a.q2);
        out.q3.push_back(a.q3);
        out.q4.push_back(a.q4);
        out.b.push_back(a.b);
        out.alpha_check.push_back(a.alpha_check);
        out.h2_check.push_back(a.h2_check);
    }
    return out;
}

TrivialProjection project_F_trivial(const OrbitPhi& orbit, double phi, int n_theta,
                                    const QuadratureParams& q)
{
    const double eps = orbit.params().eps;
    const double L = orbit.params().log_eps();
    RingShape trivial{eps, Fourier2{}};
    const auto grid =
        functional_F_grid(orbit, trivial, FourierSeries{}, FourierSeries{}, phi, n_theta, q);
    const auto series = FourierSeries::from_samples(grid, n_theta / 2 - 1);

    const AuxAtPhi a = aux_at_phi(orbit, phi);
    const double p11 = orbit.p11(phi);
    const double omega = orbit.omega();
    const double dp11 = orbit.dp11_dphi(phi);

    TrivialProjection out;
    out.sin3_measured = series.sin_coeff(3);
    out.cos2_measured = series.cos_coeff(2);
    out.sin2_measured = series.sin_coeff(2);
    out.cos1_measured = series.cos_coeff(1);
    out.sin1_measured = series.sin_coeff(1);
    out.sin3_predicted = -eps * a.g3;
    out.cos2_predicted = eps * eps * L * (a.f2 + omega * dp11 / (4.0 * p11));
    out.sin2_predicted = eps * eps * L * a.g2;
    out.cos1_predicted = 0.0;
    out.sin1_predicted = -eps * eps * eps * L * std::pow(2.0 * p11, 0.25) * a.b;
    return out;
}

double approx_profile_h0(const OrbitPhi& orbit, double phi, double theta)
{
    const AuxAtPhi a = aux_at_phi(orbit, phi);
    const double eL = orbit.params().eps * orbit.params().log_eps();
    return a.g3 * std::cos(3.0 * theta) - 2.0 * eL * a.g2 * std::cos(2.0 * theta)
        + 2.0 * eL * a.f2 * std::sin(2.0 * theta);
}

Fourier2 approx_profile_h0_series(const OrbitPhi& orbit, int n_phi)
{
    const double eL = orbit.params().eps * orbit.params().log_eps();
    std::vector<double> g3s, g2s, f2s;
    for (int i = 0; i < n_phi; ++i) {
        const AuxAtPhi a = aux_at_phi(orbit, 2.0 * M_PI * i / n_phi);
        g3s.push_back(a.g3);
        g2s.push_back(-2.0 * eL * a.g2);
        f2s.push_back(2.0 * eL * a.f2);
    }
    const int max_l = n_phi / 2 - 1;
    const auto G3 = FourierSeries::from_samples(g3s, max_l);
    const auto G2 = FourierSeries::from_samples(g2s, max_l);
    const auto F2 = FourierSeries::from_samples(f2s, max_l);

    Fourier2 h0;
    auto add = [&h0](const FourierSeries& coef, int j, bool is_sin) {
        for (const auto& [l, c] : coef.modes()) {
            // coef(phi) * cos(j theta) or * sin(j theta)
            const std::complex<double> half = 0.5 * c;
            if (!is_sin) {
                h0.set_coeff(l, j, h0.coeff(l, j) + half);
                h0.set_coeff(l, -j, h0.coeff(l, -j) + half);
            } else {
                h0.set_coeff(l, j, h0.coeff(l, j) + std::complex<double>(0.0, -1.0) * half);
                h0.set_coeff(l, -j, h0.coeff(l, -j) + std::complex<double>(0.0, 1.0) * half);
            }
        }
    };
    add(G3, 3, false);
    add(G2, 2, false);
    add(F2, 2, true);
    return h0;
}

} // namespace leapfrog::contour
