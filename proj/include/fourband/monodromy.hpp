#ifndef FOURBAND_MONODROMY_HPP
#define FOURBAND_MONODROMY_HPP

#include <complex>

#include <Eigen/Core>

#include "fourband/coeffs.hpp"
#include "fourband/spectral_point.hpp"

namespace fourband {

struct MonodromyResult {
    Eigen::Matrix4cd M;
    Eigen::Matrix4cd dM_dlambda;  ///< valid iff has_derivative
    bool has_derivative = false;
    double err_est = 0.0;  ///< a posteriori estimate from a tolerance-halved rerun
};

/// Largest admissible Re lambda^{1/4}; beyond it e^{x} exhausts doubles.
constexpr double kOverflowClampX = 25.0;

/// Integrates the 4x4 system M' = A(t, lambda) M on [0, 1] from the
/// identity, where A is the companion matrix with last row
/// (lambda - q, -p', -p, 0). When want_derivative is set, co-integrates
/// M_lambda' = A M_lambda + E M with E the single unit entry (3,0).
/// tol is the local relative error target of the adaptive RK stepper.
MonodromyResult integrate_monodromy(const CoefficientSet& c,
                                    const SpectralPoint& pt,
                                    bool want_derivative = false,
                                    double tol = 1e-12);

struct PicardTraces {
    std::complex<double> T1_partial;
    std::complex<double> T2_partial;
    /// Certified truncation bound 4 (2 kappa)^N e^{2x + kappa} / (N! |z|_1^N),
    /// valid for |4 T_nu - 4 T_nu_partial| with nu = 1, 2.
    double bound;
};

/// Partial sums of the perturbation series for the trace functions:
/// T_nu = T_nu^0 + sum_{n >= 1} (1/4) tr M_n(nu), where M_n is the n-fold
/// iterated integral of the rank-one perturbation against the free
/// propagator. Sums the terms n < N. Requires 0 <= N <= 6.
PicardTraces picard_series_traces(const CoefficientSet& c,
                                  const SpectralPoint& pt, int N);

/// eta_nu(lambda) =
///   int_0^nu dt int_0^t p(s) p(t) phi_1(nu - t + s) phi_1(t - s) ds,
/// the second-order trace correction for q = 0 and mean-zero p.
/// Requires nu in {1, 2}, q identically zero, and p of zero mean.
std::complex<double> eta_nu(const CoefficientSet& c, const SpectralPoint& pt,
                            int nu);

} // namespace fourband

#endif
