#ifndef FOURBAND_DISCRIMINANTS_HPP
#define FOURBAND_DISCRIMINANTS_HPP

#include <array>
#include <complex>

#include "fourband/coeffs.hpp"
#include "fourband/spectral_point.hpp"

namespace fourband {

/// Trace functions and derived discriminants at one lambda:
///   T1 = tr M / 4, T2 = tr M^2 / 4, T = 4 T1^2 - T2,
///   rho = (T2 + 1)/2 - T1^2, Dpm = (T -+ 4 T1 + 1)/2,
///   Delta_nu = T1 - (-1)^nu sqrt(rho).
struct DiscriminantBundle {
    std::complex<double> T1, T2, T;
    std::complex<double> rho;
    std::complex<double> Dplus, Dminus;
    std::complex<double> Delta1, Delta2;
    /// For real lambda: rho >= 0, so both Lyapunov branches are real.
    bool branch_real = false;
};

/// lambda-derivatives of the bundle entries, from the variational system.
struct BundleDerivatives {
    std::complex<double> dT1, dT2, dT;
    std::complex<double> drho, dDplus, dDminus;
};

/// Builds the bundle from traces of M(lambda).
/// Branch convention: real lambda with rho >= 0 takes sqrt(rho) >= 0
/// (so Delta1 >= Delta2); otherwise the principal square root.
DiscriminantBundle bundle(const CoefficientSet& c, const SpectralPoint& pt);

DiscriminantBundle bundle_from_traces(std::complex<double> T1,
                                      std::complex<double> T2, bool real_axis);

struct BundleWithDerivative {
    DiscriminantBundle b;
    BundleDerivatives d;
};

BundleWithDerivative bundle_with_derivative(const CoefficientSet& c,
                                            const SpectralPoint& pt);

/// Expands det(M - tau I) by Newton's identities on tr M^k and compares
/// against [1, -4 T1, 2 T, -4 T1, 1]. Returns the maximum coefficient
/// residual, each scaled by max(1, |expected coefficient|): the raw
/// coefficients grow like e^{2x}, so an absolute residual would be
/// meaningless at large |lambda|.
double char_poly_check(const CoefficientSet& c, const SpectralPoint& pt);

/// The four multipliers as reciprocal pairs (tau1, 1/tau1, tau2, 1/tau2),
/// tau_nu the larger-modulus root of tau^2 - 2 Delta_nu tau + 1.
std::array<std::complex<double>, 4> multipliers(const DiscriminantBundle& b);

/// For real lambda: number of Lyapunov branches in [-1, 1], times two.
/// Returns 0 (gap), 2, or 4.
int spectral_indicator(const DiscriminantBundle& b);

} // namespace fourband

#endif
