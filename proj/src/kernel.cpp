#include "leapfrog/kernel.hpp"
#include "leapfrog/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace leapfrog::kernel {

namespace {

double s_argument(HalfPlanePoint p, HalfPlanePoint q)
{
    const double u = std::sqrt(p.rho), v = std::sqrt(q.rho);
    const double dz = p.z - q.z;
    return ((u - v) * (u - v) * 2.0 + dz * dz) / (2.0 * u * v);
}

void require_valid(HalfPlanePoint p, HalfPlanePoint q)
{
    if (!(p.rho > 0.0) || !(q.rho > 0.0))
        throw std::domain_error("kernel: rho must be positive");
    if (p.rho == q.rho && p.z == q.z)
        throw std::domain_error("kernel: singular at coincident points");
}

struct PlainCoeffs {
    double A0, A1, A2, A3, B0, B1, B2;
};

PlainCoeffs plain_coeffs(double z1, Vec2 X, Vec2 Y)
{
    if (!(z1 > 0.0))
        throw std::domain_error("kernel expansion: requires z1 > 0");
    const double x1 = X.x, x2 = X.y, y1 = Y.x, y2 = Y.y;
    const double dx = x1 - y1, dz = x2 - y2;
    const double D = dx * dx + 2.0 * z1 * dz * dz;
    const double E = dx * dx + z1 * dz * dz;
    if (!(D > 0.0))
        throw std::domain_error("kernel expansion: degenerate configuration (D = 0)");
    const double sz = std::sqrt(z1);
    const double ln8 = std::log(8.0);
    const double L = std::log(D / (4.0 * z1 * z1));
    const double ED = E / D;

    PlainCoeffs c;
    c.A0 = sz;
    c.A1 = (x1 + y1) / (4.0 * sz);
    c.A2 = (6.0 * z1 * dz * dz - 2.0 * x1 * y1 - 3.0 * x1 * x1 - 3.0 * y1 * y1)
        / (64.0 * z1 * sz);
    c.A3 = (x1 + y1) * (5.0 * x1 * x1 - 2.0 * x1 * y1 + 5.0 * y1 * y1 - 6.0 * z1 * dz * dz)
        / (256.0 * z1 * z1 * sz);
    c.B0 = sz * (ln8 - 2.0) - 0.5 * sz * L;
    c.B1 = (x1 + y1) / (4.0 * sz) * (ln8 - 2.0 - 0.5 * L)
        + (x1 + y1) / (2.0 * sz) * ED;
    const double quart = 15.0 * std::pow(x1, 4) - 12.0 * x1 * x1 * x1 * y1
        - 6.0 * x1 * x1 * y1 * y1 - 12.0 * x1 * y1 * y1 * y1 + 15.0 * std::pow(y1, 4)
        + 4.0 * z1 * dz * dz * (3.0 * x1 * x1 + 2.0 * x1 * y1 + 3.0 * y1 * y1);
    c.B2 = (x1 * y1 - 1.5 * x1 * x1 - 1.5 * y1 * y1) / (16.0 * z1 * sz)
            * (ln8 - 2.0 - 0.5 * L)
        + (x1 + y1) * (x1 + y1) / (8.0 * z1 * sz) * ED
        + (3.0 * ln8 - 1.0) / 16.0 * sz * D / (4.0 * z1 * z1)
        + (x1 + y1) * (x1 + y1) / (4.0 * z1 * sz) * ED * ED
        - 3.0 / 32.0 * sz * D / (4.0 * z1 * z1) * L
        - quart / (32.0 * z1 * sz * D);
    return c;
}

Vec2 aniso_scale(double z1, Vec2 X)
{
    const double a = std::pow(2.0 * z1, 0.25);
    return {a * X.x, X.y / a};
}

PlainCoeffs aniso_coeffs_impl(double z1, Vec2 X, Vec2 Y)
{
    return plain_coeffs(z1, aniso_scale(z1, X), aniso_scale(z1, Y));
}

double eval_table(const PlainCoeffs& c, double eps)
{
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::domain_error("kernel expansion: eps must be in (0,1)");
    const double L = std::log(1.0 / eps);
    const double log_part = c.A0 + eps * (c.A1 + eps * (c.A2 + eps * c.A3));
    const double reg_part = c.B0 + eps * (c.B1 + eps * c.B2);
    return L * log_part + reg_part;
}

ExpansionTable to_table(const PlainCoeffs& c, ExpansionRole role)
{
    return ExpansionTable{role, {c.A0, c.A1, c.A2, c.A3}, {c.B0, c.B1, c.B2}};
}

} // namespace

double eval_G(HalfPlanePoint p, HalfPlanePoint q, bool fast)
{
    require_valid(p, q);
    const double s = s_argument(p, q);
    const double pref = std::pow(p.rho * q.rho, 0.25);
    return pref * (fast ? specfun::fast_J(s) : specfun::eval_J(s));
}

Vec2 grad_G(HalfPlanePoint p, HalfPlanePoint q, Arg which, bool fast)
{
    if (which == Arg::second) {
        Vec2 g = grad_G(q, p, Arg::first, fast);
        return g;
    }
    require_valid(p, q);
    const double u = std::sqrt(p.rho), v = std::sqrt(q.rho);
    const double dz = p.z - q.z;
    const double s = ((u - v) * (u - v) * 2.0 + dz * dz) / (2.0 * u * v);
    const double J = fast ? specfun::fast_J(s) : specfun::eval_J(s);
    const double Jp = fast ? specfun::fast_J_deriv(s) : specfun::eval_J_deriv(s);
    const double pref = std::pow(p.rho * q.rho, 0.25);
    // s = u/v + v/u - 2 + dz^2/(2uv); d(rho) = (1/(2u)) d(u)
    const double ds_du = 1.0 / v - v / (u * u) - dz * dz / (2.0 * u * u * v);
    const double ds_drho = ds_du / (2.0 * u);
    const double ds_dz = dz / (u * v);
    Vec2 g;
    g.x = 0.25 * J * pref / p.rho + pref * Jp * ds_drho;
    g.y = pref * Jp * ds_dz;
    return g;
}

double check_harmonic(HalfPlanePoint p, HalfPlanePoint q, double h, bool richardson)
{
    require_valid(p, q);
    if (h <= 0.0)
        h = 1e-4 * std::max(1.0, std::hypot(p.rho - q.rho, p.z - q.z));
    if (h >= 0.5 * p.rho)
        throw std::domain_error("check_harmonic: invalid step");
    auto op = [&](double step) {
        auto G = [&](double rho, double z) { return eval_G({rho, z}, q); };
        const double g0 = G(p.rho, p.z);
        const double d2r =
            (G(p.rho + step, p.z) - 2.0 * g0 + G(p.rho - step, p.z)) / (step * step);
        const double d2z =
            (G(p.rho, p.z + step) - 2.0 * g0 + G(p.rho, p.z - step)) / (step * step);
        return 2.0 * p.rho * d2r + d2z;
    };
    if (!richardson)
        return std::abs(op(h));
    return std::abs((4.0 * op(0.5 * h) - op(h)) / 3.0);
}

ExpansionTable plain_expansion_coeffs(HalfPlanePoint Z, Vec2 X, Vec2 Y)
{
    return to_table(plain_coeffs(Z.rho, X, Y), ExpansionRole::plain);
}

double expand_G_plain(HalfPlanePoint Z, Vec2 X, Vec2 Y, double eps)
{
    return eval_table(plain_coeffs(Z.rho, X, Y), eps);
}

ExpansionTable aniso_expansion_coeffs(HalfPlanePoint Z, Vec2 X, Vec2 Y)
{
    return to_table(aniso_coeffs_impl(Z.rho, X, Y), ExpansionRole::anisotropic);
}

double expand_G_anisotropic(HalfPlanePoint Z, Vec2 X, Vec2 Y, double eps)
{
    return eval_table(aniso_coeffs_impl(Z.rho, X, Y), eps);
}

HalfPlanePoint aniso_point(HalfPlanePoint Z, Vec2 X, double eps)
{
    const Vec2 t = aniso_scale(Z.rho, X);
    return {Z.rho + eps * t.x, Z.z + eps * t.y};
}

Vec2 grad_coeff_C(int n, HalfPlanePoint Z, Vec2 X, Vec2 Y)
{
    const double z1 = Z.rho;
    const double x1 = X.x, x2 = X.y, y1 = Y.x, y2 = Y.y;
    const double dz = x2 - y2;
    const double sz = std::sqrt(z1);
    switch (n) {
    case 1:
        return {1.0 / (4.0 * sz), 0.0};
    case 2:
        return {-std::pow(2.0 * z1, 0.25) * (y1 + 3.0 * x1) / (32.0 * z1 * sz),
                3.0 * std::pow(2.0 * z1, 0.75) * dz / (32.0 * z1 * sz)};
    case 3:
        return {std::sqrt(2.0) / (256.0 * z1 * z1)
                    * (15.0 * x1 * x1 + 6.0 * x1 * y1 + 3.0 * y1 * y1 - 3.0 * dz * dz),
                std::sqrt(2.0) / (256.0 * z1 * z1)
                    * (-6.0 * std::sqrt(2.0 * z1) * (x1 + y1) * dz)};
    default:
        throw std::domain_error("grad_coeff_C: n must be 1..3");
    }
}

Vec2 grad_coeff_D(int n, HalfPlanePoint Z, Vec2 X, Vec2 Y)
{
    const double z1 = Z.rho;
    const double x1 = X.x, x2 = X.y, y1 = Y.x, y2 = Y.y;
    const double dx = x1 - y1, dz = x2 - y2;
    const double R2 = dx * dx + dz * dz;
    if (!(R2 > 0.0))
        throw std::domain_error("grad_coeff_D: degenerate configuration (X = Y)");
    const double sz = std::sqrt(z1);
    const double q = std::pow(2.0 * z1, 0.25);
    switch (n) {
    case 0:
        return {-sz * dx / (q * R2), -sz * q * dz / R2};
    case 1: {
        const double c = 1.25 * std::log(8.0) + 0.75 * std::log(z1) - 1.0;
        const double sum = x1 + y1;
        const double comp1 = c - 0.5 * std::log(R2)
            + (dx * dx + sum * dx) / R2 - 2.0 * sum * dx * dx * dx / (R2 * R2);
        const double comp2 = -std::sqrt(2.0 * z1) * sum * dz / R2
            - 2.0 * std::sqrt(2.0 * z1) * sum * dx * dx * dz / (R2 * R2);
        return {comp1 / (4.0 * sz), comp2 / (4.0 * sz)};
    }
    case 2: {
        // D2 = diag((2 z1)^{-1/4}, (2 z1)^{1/4}) grad_X B2(X,Y) by central
        // differences of the implemented anisotropic B2 coefficient.
        const double h = 1e-6 * std::max(1.0, std::sqrt(R2));
        auto B2 = [&](Vec2 XX) { return aniso_coeffs_impl(z1, XX, Y).B2; };
        const double dB_dx1 = (B2({x1 + h, x2}) - B2({x1 - h, x2})) / (2.0 * h);
        const double dB_dx2 = (B2({x1, x2 + h}) - B2({x1, x2 - h})) / (2.0 * h);
        return {dB_dx1 / q, dB_dx2 * q};
    }
    default:
        throw std::domain_error("grad_coeff_D: n must be 0..2");
    }
}

Vec2 expand_grad_G(HalfPlanePoint Z, Vec2 X, Vec2 Y, double eps, Arg which)
{
    if (which == Arg::second)
        return expand_grad_G(Z, Y, X, eps, Arg::first);
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::domain_error("expand_grad_G: eps must be in (0,1)");
    const double L = std::log(1.0 / eps);
    Vec2 acc{0.0, 0.0};
    double epn = 1.0; // eps^{n-1}
    for (int n = 1; n <= 3; ++n) {
        acc = acc + grad_coeff_C(n, Z, X, Y) * (L * epn);
        epn *= eps;
    }
    epn = 1.0 / eps;
    for (int n = 0; n <= 2; ++n) {
        acc = acc + grad_coeff_D(n, Z, X, Y) * epn;
        epn *= eps;
    }
    return acc;
}

SecondDerivLimits second_deriv_asymptotics(double kappa, double x1, double x2)
{
    if (!(kappa > 0.0))
        throw std::domain_error("second_deriv_asymptotics: kappa must be positive");
    const double r2 = x1 * x1 + x2 * x2;
    if (!(r2 > 0.0))
        throw std::domain_error("second_deriv_asymptotics: degenerate at the origin");
    const double even = (x1 * x1 - x2 * x2) / (r2 * r2);
    const double odd = x1 * x2 / (r2 * r2);
    return {even / (2.0 * std::sqrt(kappa)), -std::sqrt(kappa) * even,
            std::sqrt(2.0) * odd};
}

} // namespace leapfrog::kernel
