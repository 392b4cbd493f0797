#ifndef LEAPFROG_FOURIER_HPP
#define LEAPFROG_FOURIER_HPP

#include <complex>
#include <map>
#include <vector>

namespace leapfrog::spectral {

/// Real 2*pi-periodic function stored as sparse complex exponential modes
/// c_k e^{ik theta}; reality (c_{-k} = conj c_k) is maintained by the named
/// constructors and mutators.
class FourierSeries {
public:
    FourierSeries() = default;

    static FourierSeries constant(double c);
    static FourierSeries cosine(int k, double amp = 1.0);
    static FourierSeries sine(int k, double amp = 1.0);

    std::complex<double> coeff(int k) const;
    void set_coeff(int k, std::complex<double> c); // sets k only
    void add_real_pair(int k, double cos_amp, double sin_amp);

    double mean() const;
    double cos_coeff(int k) const; // k >= 1
    double sin_coeff(int k) const; // k >= 1

    double eval(double theta) const;
    FourierSeries derivative() const;
    FourierSeries shifted(double delta) const; // f(theta + delta)
    FourierSeries& operator+=(const FourierSeries& o);
    FourierSeries& operator*=(double c);
    FourierSeries product(const FourierSeries& o) const; // convolution

    /// Applies a real multiplier m(k); m must satisfy m(-k) = m(k) to
    /// preserve reality (all multipliers in this module do).
    FourierSeries multiplied(double (*mult)(int, const void*), const void* ctx) const;

    int max_mode() const;
    double sup_norm_bound() const; // sum |c_k|
    double l2_norm() const;        // sqrt(sum |c_k|^2)
    const std::map<int, std::complex<double>>& modes() const { return modes_; }
    void drop_small(double tol = 1e-15);

    /// Coefficient extraction from grid samples (trapezoid on a uniform
    /// grid; exact for band-limited data); used as the two-path oracle.
    static FourierSeries from_samples(const std::vector<double>& values, int max_mode);

private:
    std::map<int, std::complex<double>> modes_;
};

enum class Part { cos, sin };

/// Single-mode projection Pi_{k,c} or Pi_{k,s}, k >= 1.
FourierSeries project(const FourierSeries& f, int k, Part part);

/// Zero-mean Hilbert transform, multiplier i sign(j). A nonzero mean is
/// annihilated; *mean_dropped reports the contract violation when non-null.
FourierSeries hilbert(const FourierSeries& f, bool* mean_dropped = nullptr);

/// I_{m,n} = -avg_T |sin(eta/2)|^m ln|sin(eta/2)| e^{in eta} d eta by the
/// closed digamma/Gamma form (with the exact pole limits at even m).
double Inm(int m, int n);

/// Fourier multiplier Lambda_m: mode k scaled by I_{m,|k|}.
FourierSeries lambda_m(const FourierSeries& f, int m);

/// Shift operator S localizing on modes 1 and 2; g3 = (1/8)(2 p11)^{-3/4}.
FourierSeries op_S(const FourierSeries& f, double g3);

/// H_{u,0} = -(coeff/2) d_theta avg ln|sin((theta-eta)/2)| (cos theta +
/// cos eta) h(eta); coeff = (2 p11)^{-3/4}.
FourierSeries op_Hu0(const FourierSeries& f, double coeff);

struct ModeOneCouplings {
    double p11;
    double q1, q2, q3, q4;
};

/// Mode-1 localized operator Q; needs the pi-shifted companion h_star.
FourierSeries op_Q(const FourierSeries& h, const FourierSeries& h_star,
                   const ModeOneCouplings& c);

} // namespace leapfrog::spectral

#endif
