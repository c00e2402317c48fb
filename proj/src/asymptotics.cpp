#include "fourband/asymptotics.hpp"

#include <cmath>

#include "fourband/discriminants.hpp"
#include "fourband/spectral_point.hpp"

namespace fourband {

namespace {
using C = std::complex<double>;
}

std::pair<std::complex<double>, std::complex<double>> resonance_asymptote(
    const CoefficientSet& c, int n) {
    if (n < 1) throw PreconditionError("resonance_asymptote: n must be >= 1");
    const double pn = M_PI * n;
    const double base = -4.0 * pn * pn * pn * pn +
                        2.0 * fourier_p0(c) * pn * pn;
    const double osc = std::sqrt(2.0) * pn * std::abs(fourier_pprime_n(c, n));
    return {C(base - osc, 0.0), C(base + osc, 0.0)};
}

EigenvalueAsymptote eigenvalue_asymptote(const CoefficientSet& c, int n) {
    if (n < 1) throw PreconditionError("eigenvalue_asymptote: n must be >= 1");
    const double pn = M_PI * n;
    const double base =
        pn * pn * pn * pn - fourier_p0(c) * pn * pn;
    const double half_gap = pn * std::abs(fourier_pprime_n(c, n)) / 2.0;
    return {base - half_gap, base + half_gap, 2.0 * half_gap};
}

PerturbationPrediction perturbation_predictions(const CoefficientSet& c,
                                                double eps) {
    if (std::abs(fourier_p0(c)) > 1e-13)
        throw PreconditionError(
            "perturbation_predictions requires mean-zero p");
    if (!c.q_is_zero())
        throw PreconditionError("perturbation_predictions requires q = 0");
    if (std::abs(eps) > 1.0)
        throw PreconditionError("perturbation_predictions requires |eps| <= 1");
    const auto [v1, v2] = perturbation_moments(c);
    const double a = amplitude_A(c).value;
    PerturbationPrediction out;
    out.r0_pred = 2.0 * eps * eps * (4.0 * v1 - v2);
    out.l0_pred = out.r0_pred;
    // v_nu is the second-order correction of the full trace tr M^nu; the
    // normalized trace T_nu = tr M^nu / 4 shifts by eps^2 v_nu / 4, so the
    // band length (T_1 - 1)^2 / rho'(0) comes out as a^2 eps^4 / 4.
    out.gap_pred = a * a * std::pow(eps, 4) / 4.0;
    return out;
}

std::vector<LyapunovAsymptoteRow> lyapunov_asymptote_check(
    const CoefficientSet& c, const std::vector<double>& lambda_grid) {
    std::vector<LyapunovAsymptoteRow> out;
    for (double lam : lambda_grid) {
        const SpectralPoint pt{C(lam, 0.0)};
        // exclusion zones of the leading terms' zeros
        const double upper = std::abs(pt.z) / M_PI + 1.0;
        for (int n = 0; n <= static_cast<int>(upper); ++n) {
            const C corner(M_PI * n, M_PI * n);
            if (std::abs(pt.z - corner) <= 1.0 ||
                std::abs(pt.z - std::conj(corner)) <= 1.0 ||
                std::abs(pt.z - C(M_PI * n, 0.0)) <= 1.0)
                throw PreconditionError(
                    "lyapunov_asymptote_check: grid point inside an "
                    "exclusion zone at lambda = " + std::to_string(lam));
        }
        const DiscriminantBundle b = bundle(c, pt);
        LyapunovAsymptoteRow row;
        row.lambda = lam;
        // on the real axis Delta1 >= Delta2 matches cosh z >= cos z
        row.ratio_cosh =
            std::abs(b.Delta1 / std::cosh(pt.z) - 1.0) * std::abs(pt.z);
        row.ratio_cos =
            std::abs(b.Delta2 / std::cos(pt.z) - 1.0) * std::abs(pt.z);
        out.push_back(row);
    }
    return out;
}

double loglog_slope(const std::vector<double>& xs,
                    const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw PreconditionError("loglog_slope needs matched sweeps");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(std::abs(xs[i]));
        const double ly = std::log(std::abs(ys[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace fourband
