#ifndef FOURBAND_COEFFS_HPP
#define FOURBAND_COEFFS_HPP

#include <complex>
#include <string>
#include <vector>

#include "fourband/errors.hpp"

namespace fourband {

/// One real 1-periodic trigonometric polynomial,
///   f(t) = c0 + sum_k ( cos_k * cos(2*pi*k*t) + sin_k * sin(2*pi*k*t) ),
/// with k = 1..K (index 0 of the vectors is mode 1).
struct FourierSeries {
    double constant = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    double eval(double t) const;
    double eval_derivative(double t) const;
    int max_mode() const {
        return static_cast<int>(std::max(cos_coeffs.size(), sin_coeffs.size()));
    }
    bool is_zero() const;
    FourierSeries scaled(double factor) const;
    /// The series t -> f(t + t0), expanded back into the same basis.
    FourierSeries shifted(double t0) const;
};

/// The periodic coefficients p, q of the operator
/// d^4/dt^4 + (d/dt) p (d/dt) + q, with the L1 norm sum
/// kappa = ||p|| + ||p'|| + ||q|| cached at construction.
class CoefficientSet {
public:
    CoefficientSet(FourierSeries p, FourierSeries q);

    double p(double t) const { return p_.eval(t); }
    double p_prime(double t) const { return p_.eval_derivative(t); }
    double q(double t) const { return q_.eval(t); }
    double kappa() const { return kappa_; }

    const FourierSeries& p_series() const { return p_; }
    const FourierSeries& q_series() const { return q_; }

    bool p_is_zero() const { return p_.is_zero(); }
    bool q_is_zero() const { return q_.is_zero(); }
    bool is_free() const { return p_is_zero() && q_is_zero(); }

    CoefficientSet scaled(double factor) const;
    CoefficientSet shifted(double t0) const;

private:
    FourierSeries p_;
    FourierSeries q_;
    double kappa_;
};

struct CoeffValues {
    double p;
    double p_prime;
    double q;
};

/// Pointwise evaluation of p, p', q; p' is the exact termwise derivative.
CoeffValues eval_coeffs(const CoefficientSet& c, double t);

/// Mean of p over one period.
double fourier_p0(const CoefficientSet& c);

/// n-th Fourier coefficient of p' with the negative-exponent,
/// unnormalized convention: integral over [0,1] of p'(t) e^{-i 2 pi n t} dt.
std::complex<double> fourier_pprime_n(const CoefficientSet& c, int n);

struct PerturbationMoments {
    double v1;
    double v2;
};

/// The nested integrals
///   v_nu = int_0^nu dt int_0^t p(s) p(t) (nu - t + s)(t - s) ds,  nu = 1, 2,
/// with p extended 1-periodically.
PerturbationMoments perturbation_moments(const CoefficientSet& c);

struct Amplitude {
    double value;       ///< int_0^1 ( int_0^t p )^2 dt
    bool degenerate;    ///< true when p vanishes identically
};

/// The band-opening amplitude, computed three independent ways
/// (moment combination v2/12 - 4 v1/3, the primitive-square integral, and
/// the autocorrelation form with weight u(u-1)), asserting mutual agreement.
/// Requires mean-zero p.
Amplitude amplitude_A(const CoefficientSet& c);

} // namespace fourband

#endif
