#ifndef FOURBAND_ASYMPTOTICS_HPP
#define FOURBAND_ASYMPTOTICS_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "fourband/coeffs.hpp"

namespace fourband {

struct AsymptoticComparison {
    double parameter;  // n or eps
    std::complex<double> predicted;
    std::complex<double> computed;
    double residual;
    std::string expected_order;
};

/// Large-n resonance prediction
///   r_n^-+ = -4 (pi n)^4 + 2 p_hat_0 (pi n)^2 -+ sqrt(2) pi n |p_hat_n'|,
/// returned as (minus, plus). The zero-mode coefficient enters exactly as
/// printed here; see eigenvalue_asymptote for the mirrored convention.
std::pair<std::complex<double>, std::complex<double>> resonance_asymptote(
    const CoefficientSet& c, int n);

struct EigenvalueAsymptote {
    double minus, plus;
    double predicted_gap;  ///< pi n |p_hat_n'|
};

/// Large-n eigenvalue prediction
///   lambda_n^-+ = (pi n)^4 - p_hat_0 (pi n)^2 -+ pi n |p_hat_n'| / 2.
EigenvalueAsymptote eigenvalue_asymptote(const CoefficientSet& c, int n);

struct PerturbationPrediction {
    double r0_pred;   ///< 2 eps^2 (4 v1 - v2)
    double l0_pred;   ///< same leading term
    double gap_pred;  ///< 4 A^2 eps^4
};

/// Leading-order location of the lowest resonance/eigenvalue pair and the
/// opening gap for coefficients eps * p. Requires mean-zero p, q = 0,
/// |eps| <= 1.
PerturbationPrediction perturbation_predictions(const CoefficientSet& c,
                                                double eps);

/// Scaled residuals |Delta_1 / cosh z - 1| |z| and |Delta_2 / cos z - 1| |z|
/// over a real-lambda grid; each grid point must keep |z - (1 +- i) pi n| > 1
/// and, for the cos branch, |z - pi n| > 1.
struct LyapunovAsymptoteRow {
    double lambda;
    double ratio_cosh;  // |Delta1/cosh z - 1| * |z|
    double ratio_cos;   // |Delta2/cos z - 1| * |z|
};

std::vector<LyapunovAsymptoteRow> lyapunov_asymptote_check(
    const CoefficientSet& c, const std::vector<double>& lambda_grid);

/// Least-squares slope of log|y| against log x (for order-fitting sweeps).
double loglog_slope(const std::vector<double>& xs,
                    const std::vector<double>& ys);

} // namespace fourband

#endif
