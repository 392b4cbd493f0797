#ifndef LEAPFROG_TRANSPORT_HPP
#define LEAPFROG_TRANSPORT_HPP

#include <complex>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace leapfrog::spectral {

/// Real function on the two-torus (phi, theta) as sparse modes
/// c_{l,j} e^{i(l phi + j theta)}.
class Fourier2 {
public:
    using Key = std::pair<int, int>;

    std::complex<double> coeff(int l, int j) const;
    void set_coeff(int l, int j, std::complex<double> c);
    void add_real_cos(int l, int j, double amp); // amp cos(l phi + j theta)
    void add_real_sin(int l, int j, double amp);

    double eval(double phi, double theta) const;
    Fourier2 derivative_phi() const;
    Fourier2 derivative_theta() const;
    Fourier2 star() const; // phi -> phi + pi
    double l2_norm() const;
    double mean() const;

    const std::map<Key, std::complex<double>>& modes() const { return modes_; }

private:
    std::map<Key, std::complex<double>> modes_;
};

struct DiophantineParams {
    double nu;   // divisor threshold scale, in (0, 1]
    double tau;  // Diophantine exponent, > 0
    int Ncut;    // frequency cutoff, >= 1
};

/// Smooth plateau cutoff: 0 for |x| <= 1/3, 1 for |x| >= 1/2.
double divisor_cutoff(double x);

struct TransportResult {
    Fourier2 solution;
    double residual_norm;   // ||(eps1 w d_phi + c d_theta) rho - Pi_N h||_2
    bool all_clear;         // every retained mode passed the plateau
    std::vector<std::pair<int, int>> cut_modes; // modes with cutoff < 1
};

/// Regularized mode-wise inversion of eps1*omega*d_phi + c*d_theta applied
/// to a zero-mean h, with the Appendix-A plateau cutoff.
TransportResult transport_invert(const Fourier2& h, double eps1, double omega,
                                 double c, const DiophantineParams& dio);

struct DivisorScanRow {
    double lambda;
    bool admissible;
    double worst_divisor; // min over modes of |eps1 w l + j c| <j>^tau / nu
    int worst_l;
    int worst_j;
};

struct DivisorScanResult {
    std::vector<DivisorScanRow> rows;
    double admissible_fraction;
};

/// Checks the Diophantine condition |eps1 w(lambda) l + j c(lambda)| >=
/// nu <j>^{-tau} over all 0 < |l|,|j| <= Ncut (and the pure modes), per
/// lambda in the grid.
DivisorScanResult divisor_scan(double eps1,
                               const std::function<double(double)>& omega_fn,
                               const std::function<double(double)>& c_fn,
                               const std::vector<double>& lambda_grid,
                               const DiophantineParams& dio);

} // namespace leapfrog::spectral

#endif
