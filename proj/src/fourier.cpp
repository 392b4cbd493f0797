#include "leapfrog/fourier.hpp"
#include "leapfrog/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace leapfrog::spectral {

using cd = std::complex<double>;

FourierSeries FourierSeries::constant(double c)
{
    FourierSeries f;
    if (c != 0.0)
        f.modes_[0] = c;
    return f;
}

FourierSeries FourierSeries::cosine(int k, double amp)
{
    FourierSeries f;
    f.add_real_pair(k, amp, 0.0);
    return f;
}

FourierSeries FourierSeries::sine(int k, double amp)
{
    FourierSeries f;
    f.add_real_pair(k, 0.0, amp);
    return f;
}

cd FourierSeries::coeff(int k) const
{
    auto it = modes_.find(k);
    return it == modes_.end() ? cd(0.0) : it->second;
}

void FourierSeries::set_coeff(int k, cd c)
{
    if (c == cd(0.0))
        modes_.erase(k);
    else
        modes_[k] = c;
}

void FourierSeries::add_real_pair(int k, double a, double b)
{
    if (k < 0)
        throw std::domain_error("add_real_pair: k must be >= 0");
    if (k == 0) {
        set_coeff(0, coeff(0) + a);
        return;
    }
    set_coeff(k, coeff(k) + cd(0.5 * a, -0.5 * b));
    set_coeff(-k, coeff(-k) + cd(0.5 * a, 0.5 * b));
}

double FourierSeries::mean() const { return coeff(0).real(); }

double FourierSeries::cos_coeff(int k) const { return 2.0 * coeff(k).real(); }

double FourierSeries::sin_coeff(int k) const { return -2.0 * coeff(k).imag(); }

double FourierSeries::eval(double theta) const
{
    double sum = 0.0;
    for (const auto& [k, c] : modes_)
        sum += (c * std::exp(cd(0.0, k * theta))).real();
    return sum;
}

FourierSeries FourierSeries::derivative() const
{
    FourierSeries d;
    for (const auto& [k, c] : modes_)
        if (k != 0)
            d.modes_[k] = cd(0.0, double(k)) * c;
    return d;
}

FourierSeries FourierSeries::shifted(double delta) const
{
    FourierSeries s;
    for (const auto& [k, c] : modes_)
        s.modes_[k] = c * std::exp(cd(0.0, k * delta));
    return s;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& o)
{
    for (const auto& [k, c] : o.modes_)
        set_coeff(k, coeff(k) + c);
    return *this;
}

FourierSeries& FourierSeries::operator*=(double c)
{
    for (auto& [k, v] : modes_)
        v *= c;
    return *this;
}

FourierSeries FourierSeries::product(const FourierSeries& o) const
{
    FourierSeries r;
    for (const auto& [k1, c1] : modes_)
        for (const auto& [k2, c2] : o.modes_)
            r.set_coeff(k1 + k2, r.coeff(k1 + k2) + c1 * c2);
    return r;
}

FourierSeries FourierSeries::multiplied(double (*mult)(int, const void*),
                                        const void* ctx) const
{
    FourierSeries r;
    for (const auto& [k, c] : modes_) {
        double m = mult(k, ctx);
        if (m != 0.0)
            r.modes_[k] = m * c;
    }
    return r;
}

int FourierSeries::max_mode() const
{
    int m = 0;
    for (const auto& [k, c] : modes_)
        m = std::max(m, std::abs(k));
    return m;
}

double FourierSeries::sup_norm_bound() const
{
    double s = 0.0;
    for (const auto& [k, c] : modes_)
        s += std::abs(c);
    return s;
}

double FourierSeries::l2_norm() const
{
    double s = 0.0;
    for (const auto& [k, c] : modes_)
        s += std::norm(c);
    return std::sqrt(s);
}

void FourierSeries::drop_small(double tol)
{
    for (auto it = modes_.begin(); it != modes_.end();)
        it = (std::abs(it->second) <= tol) ? modes_.erase(it) : std::next(it);
}

FourierSeries FourierSeries::from_samples(const std::vector<double>& v, int max_mode)
{
    const int n = int(v.size());
    if (n < 2 * max_mode + 1)
        throw std::domain_error("from_samples: grid too small for requested modes");
    FourierSeries f;
    for (int k = -max_mode; k <= max_mode; ++k) {
        cd sum = 0.0;
        for (int j = 0; j < n; ++j)
            sum += v[std::size_t(j)] * std::exp(cd(0.0, -k * 2.0 * M_PI * j / n));
        f.set_coeff(k, sum / double(n));
    }
    f.drop_small();
    return f;
}

FourierSeries project(const FourierSeries& f, int k, Part part)
{
    if (k < 1)
        throw std::domain_error("project: k must be >= 1");
    return part == Part::cos ? FourierSeries::cosine(k, f.cos_coeff(k))
                             : FourierSeries::sine(k, f.sin_coeff(k));
}

FourierSeries hilbert(const FourierSeries& f, bool* mean_dropped)
{
    if (mean_dropped)
        *mean_dropped = f.mean() != 0.0;
    FourierSeries r;
    for (const auto& [k, c] : f.modes()) {
        if (k == 0)
            continue;
        r.set_coeff(k, cd(0.0, k > 0 ? 1.0 : -1.0) * c);
    }
    return r;
}

double Inm(int m, int n)
{
    if (m < 0)
        throw std::domain_error("Inm: m must be >= 0");
    n = std::abs(n);
    const double a = 0.5 * m - n + 1.0;
    const double b = 0.5 * m + n + 1.0;
    const double ln2 = std::log(2.0);
    const double gm1 = specfun::log_gamma(m + 1.0);
    const double psi_m1 = specfun::digamma(m + 1.0);
    const double psi_b = specfun::digamma(b);
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;

    if (a > 0.0) {
        const double pref = sign_n * std::exp(gm1 - m * ln2 - specfun::log_gamma(a)
                                              - specfun::log_gamma(b));
        return -pref * (-ln2 + psi_m1 - 0.5 * specfun::digamma(a) - 0.5 * psi_b);
    }
    if (m % 2 == 0) {
        // a is a nonpositive integer: 1/Gamma(a) = 0 and
        // psi(a)/Gamma(a) -> (-1)^{k+1} k!  with k = -a
        const int k = int(std::lround(-a));
        const double sign_k = (k % 2 == 0) ? -1.0 : 1.0; // (-1)^{k+1}
        const double ratio = sign_k * std::exp(std::lgamma(k + 1.0) + gm1
                                               - m * ln2 - specfun::log_gamma(b));
        return 0.5 * sign_n * ratio;
    }
    // m odd: reflect Gamma and psi through a < 0 (non-integer), combining the
    // logs before exponentiating so large-n values do not overflow:
    // 1/Gamma(a) = sin(pi a) Gamma(1-a) / pi
    const double sin_pa = std::sin(M_PI * a);
    const double psi_a = specfun::digamma(1.0 - a) - M_PI / std::tan(M_PI * a);
    const double log_mag = gm1 - m * ln2 - specfun::log_gamma(b)
        + specfun::log_gamma(1.0 - a) + std::log(std::abs(sin_pa)) - std::log(M_PI);
    const double pref = sign_n * (sin_pa < 0.0 ? -1.0 : 1.0) * std::exp(log_mag);
    return -pref * (-ln2 + psi_m1 - 0.5 * psi_a - 0.5 * psi_b);
}

FourierSeries lambda_m(const FourierSeries& f, int m)
{
    FourierSeries r;
    for (const auto& [k, c] : f.modes())
        r.set_coeff(k, Inm(m, k) * c);
    return r;
}

FourierSeries op_S(const FourierSeries& f, double g3)
{
    FourierSeries r;
    r.add_real_pair(1, -g3 * 0.5 * f.cos_coeff(2), g3 * 0.5 * f.sin_coeff(2));
    r.add_real_pair(2, -g3 * 0.5 * f.cos_coeff(1), g3 * 0.5 * f.sin_coeff(1));
    r.drop_small(0.0);
    return r;
}

FourierSeries op_Hu0(const FourierSeries& f, double coeff)
{
    // A[h] = avg ln|sin((theta-eta)/2)| h(eta): multiplier -1/(2|k|), k != 0,
    // and -ln 2 on the mean.
    auto log_mult = [](int k, const void*) {
        return k == 0 ? -std::log(2.0) : -0.5 / std::abs(k);
    };
    const FourierSeries cos1 = FourierSeries::cosine(1);
    FourierSeries inner = cos1.product(f.multiplied(log_mult, nullptr));
    inner += f.product(cos1).multiplied(log_mult, nullptr);
    FourierSeries r = inner.derivative();
    r *= -0.5 * coeff;
    return r;
}

FourierSeries op_Q(const FourierSeries& h, const FourierSeries& h_star,
                   const ModeOneCouplings& c)
{
    const double s32 = std::pow(2.0 * c.p11, -1.5);
    const double A = s32 / 16.0 * h.cos_coeff(1) + c.q1 * h_star.cos_coeff(1)
        + c.q2 * h_star.sin_coeff(1);
    const double B = -3.0 * s32 / 16.0 * h.sin_coeff(1) + c.q3 * h_star.cos_coeff(1)
        + c.q4 * h_star.sin_coeff(1);
    // d_theta Q[h] = A sin + B cos, hence Q[h] = -A cos + B sin
    FourierSeries r;
    r.add_real_pair(1, -A, B);
    r.drop_small(0.0);
    return r;
}

} // namespace leapfrog::spectral
