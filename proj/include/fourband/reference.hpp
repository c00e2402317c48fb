#ifndef FOURBAND_REFERENCE_HPP
#define FOURBAND_REFERENCE_HPP

#include <complex>
#include <vector>

#include "fourband/discriminants.hpp"
#include "fourband/spectral_point.hpp"

namespace fourband {

/// Fundamental solutions of y'''' = lambda y normalized by
/// phi_j^(k)(0) = delta_jk:
///   phi_0 = (cosh zt + cos zt)/2,        phi_1 = (sinh zt + sin zt)/(2z),
///   phi_2 = (cosh zt - cos zt)/(2 z^2),  phi_3 = (sinh zt - sin zt)/(2 z^3),
/// with the entire-function limits t^j/j! at lambda = 0.
/// Requires t in [0, 2] and j in 0..3.
std::complex<double> free_solutions(const SpectralPoint& pt, double t, int j);

/// phi_j extended to j in -3..3 by the derivative rule
/// phi_j' = phi_{j-1} with phi_{j-4} = lambda phi_j, so that the k-th
/// derivative of phi_j is free_solution_index(pt, t, j - k).
std::complex<double> free_solution_index(const SpectralPoint& pt, double t,
                                         int j);

/// Closed-form discriminants of the free operator:
///   T_nu = (cosh nu z + cos nu z)/2, rho = (cosh z - cos z)^2/4,
///   Dpm = (cos z -+ 1)(cosh z -+ 1), Delta1 = cosh z, Delta2 = cos z,
///   T = 1 + 2 cosh z cos z.
DiscriminantBundle free_discriminants(const SpectralPoint& pt);

struct LabeledValue {
    double lambda;
    int multiplicity;
};

struct FreeSpectrumLabels {
    std::vector<LabeledValue> periodic;      ///< 0 simple, (2 pi n)^4 double
    std::vector<LabeledValue> antiperiodic;  ///< (pi(2n-1))^4 double
    std::vector<LabeledValue> resonances;    ///< 0 simple, -4(pi n)^4 double
};

/// The labeled free-case zeros up to index N >= 1.
FreeSpectrumLabels free_spectrum_labels(int N);

/// True when lambda lies in the domain where the free rho admits the
/// exponential lower bound: outside every closed disk
/// |lambda^{1/4} - (1 +- i) pi n| <= pi/(2 sqrt 2), n >= 0.
bool in_rho_lower_bound_domain(const SpectralPoint& pt);

} // namespace fourband

#endif
