#ifndef FOURBAND_SPECTRAL_POINT_HPP
#define FOURBAND_SPECTRAL_POINT_HPP

#include <cmath>
#include <complex>

#include "fourband/errors.hpp"

namespace fourband {

/// A spectral parameter lambda together with its quarter-root
/// z = lambda^{1/4} on the branch arg z in (-pi/4, pi/4].
struct SpectralPoint {
    std::complex<double> lambda;
    std::complex<double> z;
    double x;   ///< Re z
    double y;   ///< Im z
    double z1;  ///< max{1, |z|}

    explicit SpectralPoint(std::complex<double> lam) {
        // Force +0 imaginary part so negative real lambda lands on
        // arg = pi, not -pi.
        if (lam.imag() == 0.0) lam = {lam.real(), 0.0};
        lambda = lam;
        z = std::pow(lam, 0.25);
        // Principal pow gives arg z in [-pi/4, pi/4]; fold the excluded
        // lower boundary onto the included upper one.
        if (std::arg(z) <= -M_PI / 4.0 && z != 0.0)
            z *= std::complex<double>(0.0, 1.0);
        x = z.real();
        y = z.imag();
        z1 = std::max(1.0, std::abs(z));
        if (x < std::abs(y) - 1e-12 * z1)
            throw NumericalError("quarter-root left the principal sector");
    }

    bool is_real() const { return lambda.imag() == 0.0; }
};

} // namespace fourband

#endif
