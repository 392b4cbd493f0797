#ifndef LEAPFROG_ODE_HPP
#define LEAPFROG_ODE_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leapfrog {

/// Observers may throw this to end an integration early (event found).
struct StopIntegration {};

/// Thrown when the step size underflows near a singularity; carries the last
/// valid time so callers can report how far the integration got.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& msg, double t_last)
        : std::runtime_error(msg), t_last_(t_last) {}
    double t_last() const { return t_last_; }

private:
    double t_last_;
};

/// Adaptive Dormand-Prince 5(4) driver. RHS: (t, y) -> dy/dt.
/// Observer is called as obs(t, y, dydt) at t0 and after every accepted step.
template <int N, class RHS, class Observer>
void integrate_adaptive(const RHS& f, std::array<double, N>& y, double t0,
                        double t1, double tol, Observer&& obs)
{
    using St = std::array<double, N>;
    if (t1 == t0) {
        obs(t0, y, f(t0, y));
        return;
    }
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    double t = t0;
    double h = std::min(span, std::max(1e-8, 0.01 * span));
    St k1 = f(t, y);
    obs(t, y, k1);

    int rejected_in_row = 0;
    while (dir * (t1 - t) > 0.0) {
        bool last = false;
        if (h >= std::abs(t1 - t) * (1.0 - 1e-14)) {
            h = std::abs(t1 - t);
            last = true;
        }
        const double hd = h * dir;

        St y2, y3, y4, y5, y6, y7;
        for (int i = 0; i < N; ++i)
            y2[i] = y[i] + hd * a21 * k1[i];
        St k2 = f(t + 0.2 * hd, y2);
        for (int i = 0; i < N; ++i)
            y3[i] = y[i] + hd * (a31 * k1[i] + a32 * k2[i]);
        St k3 = f(t + 0.3 * hd, y3);
        for (int i = 0; i < N; ++i)
            y4[i] = y[i] + hd * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        St k4 = f(t + 0.8 * hd, y4);
        for (int i = 0; i < N; ++i)
            y5[i] = y[i] + hd * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        St k5 = f(t + (8.0 / 9.0) * hd, y5);
        for (int i = 0; i < N; ++i)
            y6[i] = y[i]
                + hd * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        St k6 = f(t + hd, y6);
        for (int i = 0; i < N; ++i)
            y7[i] = y[i] + hd * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        St k7 = f(t + hd, y7);

        double err = 0.0;
        for (int i = 0; i < N; ++i) {
            double e = hd
                * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double scale = tol + tol * std::max(std::abs(y[i]), std::abs(y7[i]));
            err += (e / scale) * (e / scale);
        }
        err = std::sqrt(err / N);

        if (err <= 1.0 || h <= 1e-14 * span) {
            t = last ? t1 : t + hd;
            y = y7;
            k1 = k7; // FSAL
            obs(t, y, k1);
            rejected_in_row = 0;
            if (last)
                break;
        } else {
            if (++rejected_in_row > 60)
                throw IntegrationError("integrate_adaptive: step size underflow", t);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::min(5.0, std::max(0.2, fac));
        if (h < 1e-14 * span)
            throw IntegrationError("integrate_adaptive: step size underflow", t);
    }
}

template <int N, class RHS>
std::array<double, N> flow(const RHS& f, std::array<double, N> y, double t0,
                           double t1, double tol)
{
    integrate_adaptive<N>(f, y, t0, t1, tol,
                          [](double, const std::array<double, N>&, const std::array<double, N>&) {});
    return y;
}

} // namespace leapfrog

#endif
