#include "leapfrog/transport.hpp"
#include "leapfrog/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace leapfrog::spectral {

using cd = std::complex<double>;

cd Fourier2::coeff(int l, int j) const
{
    auto it = modes_.find({l, j});
    return it == modes_.end() ? cd(0.0) : it->second;
}

void Fourier2::set_coeff(int l, int j, cd c)
{
    if (c == cd(0.0))
        modes_.erase({l, j});
    else
        modes_[{l, j}] = c;
}

void Fourier2::add_real_cos(int l, int j, double amp)
{
    set_coeff(l, j, coeff(l, j) + 0.5 * amp);
    set_coeff(-l, -j, coeff(-l, -j) + 0.5 * amp);
}

void Fourier2::add_real_sin(int l, int j, double amp)
{
    set_coeff(l, j, coeff(l, j) + cd(0.0, -0.5 * amp));
    set_coeff(-l, -j, coeff(-l, -j) + cd(0.0, 0.5 * amp));
}

double Fourier2::eval(double phi, double theta) const
{
    double sum = 0.0;
    for (const auto& [k, c] : modes_)
        sum += (c * std::exp(cd(0.0, k.first * phi + k.second * theta))).real();
    return sum;
}

Fourier2 Fourier2::derivative_phi() const
{
    Fourier2 d;
    for (const auto& [k, c] : modes_)
        if (k.first != 0)
            d.modes_[k] = cd(0.0, double(k.first)) * c;
    return d;
}

Fourier2 Fourier2::derivative_theta() const
{
    Fourier2 d;
    for (const auto& [k, c] : modes_)
        if (k.second != 0)
            d.modes_[k] = cd(0.0, double(k.second)) * c;
    return d;
}

Fourier2 Fourier2::star() const
{
    Fourier2 s;
    for (const auto& [k, c] : modes_)
        s.modes_[k] = (k.first % 2 == 0) ? c : -c;
    return s;
}

double Fourier2::l2_norm() const
{
    double s = 0.0;
    for (const auto& [k, c] : modes_)
        s += std::norm(c);
    return std::sqrt(s);
}

double Fourier2::mean() const { return coeff(0, 0).real(); }

double divisor_cutoff(double x)
{
    const double ax = std::abs(x);
    if (ax <= 1.0 / 3.0)
        return 0.0;
    if (ax >= 0.5)
        return 1.0;
    auto bump = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
    const double t = (ax - 1.0 / 3.0) * 6.0; // maps [1/3, 1/2] to [0, 1]
    return bump(t) / (bump(t) + bump(1.0 - t));
}

namespace {

double bracket(int j) { return std::max(1.0, std::abs(double(j))); }

} // namespace

TransportResult transport_invert(const Fourier2& h, double eps1, double omega,
                                 double c, const DiophantineParams& dio)
{
    if (!(dio.nu > 0.0) || dio.nu > 1.0 || !(dio.tau > 0.0))
        throw std::domain_error("transport_invert: invalid Diophantine parameters");
    for (const auto& [key, hc] : h.modes()) {
        // zero theta-average: no j = 0 content at any l
        if (key.second == 0 && std::abs(hc) > 0.0)
            throw std::domain_error("transport_invert: h must have zero theta-average");
    }

    TransportResult out;
    out.all_clear = true;
    double res2 = 0.0;
    for (const auto& [key, hc] : h.modes()) {
        const auto [l, j] = key;
        const double div = eps1 * omega * l + c * j;
        const double chi = divisor_cutoff(div / dio.nu * std::pow(bracket(j), dio.tau));
        if (chi < 1.0) {
            out.all_clear = false;
            if (l >= 0) // record one representative of the conjugate pair
                out.cut_modes.emplace_back(l, j);
            res2 += std::norm((chi - 1.0) * hc);
        }
        if (chi != 0.0)
            out.solution.set_coeff(l, j, cd(0.0, -1.0) * chi / div * hc);
    }
    out.residual_norm = std::sqrt(res2);
    return out;
}

DivisorScanResult divisor_scan(double eps1,
                               const std::function<double(double)>& omega_fn,
                               const std::function<double(double)>& c_fn,
                               const std::vector<double>& lambda_grid,
                               const DiophantineParams& dio)
{
    DivisorScanResult result;
    result.rows.resize(lambda_grid.size());
    parallel_for(lambda_grid.size(), [&](std::size_t i) {
        const double lambda = lambda_grid[i];
        const double w = omega_fn(lambda);
        const double cc = c_fn(lambda);
        DivisorScanRow row{lambda, true, std::numeric_limits<double>::infinity(), 0, 0};
        // zero theta-average setting: no j = 0 divisors; for each j the
        // box-minimum over |l| <= Ncut sits at the clamped nearest lattice
        // point, so only three candidates need checking
        for (int j = 1; j <= dio.Ncut; ++j) {
            const double l_vertex = -cc * j / (eps1 * w);
            const long l_round = std::lround(std::min(
                std::max(l_vertex, -double(dio.Ncut) - 1.0), double(dio.Ncut) + 1.0));
            for (long l = l_round - 1; l <= l_round + 1; ++l) {
                if (std::abs(l) > dio.Ncut)
                    continue;
                const double margin = std::abs(eps1 * w * double(l) + cc * j)
                    * std::pow(bracket(j), dio.tau) / dio.nu;
                if (margin < row.worst_divisor) {
                    row.worst_divisor = margin;
                    row.worst_l = int(l);
                    row.worst_j = j;
                }
            }
        }
        row.admissible = row.worst_divisor >= 1.0;
        result.rows[i] = row;
    });
    std::size_t n_adm = 0;
    for (const auto& r : result.rows)
        n_adm += r.admissible ? 1 : 0;
    result.admissible_fraction =
        lambda_grid.empty() ? 1.0 : double(n_adm) / double(lambda_grid.size());
    return result;
}

} // namespace leapfrog::spectral
