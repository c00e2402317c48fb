#include "fourband/coeffs.hpp"

#include <algorithm>
#include <cmath>

#include "fourband/quadrature.hpp"

namespace fourband {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

// >= 8 quadrature points per wavelength of the highest mode.
int panels_for(int max_mode) { return std::max(4, max_mode); }
} // namespace

double FourierSeries::eval(double t) const {
    double v = constant;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
        v += cos_coeffs[k] * std::cos(kTwoPi * (k + 1) * t);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
        v += sin_coeffs[k] * std::sin(kTwoPi * (k + 1) * t);
    return v;
}

double FourierSeries::eval_derivative(double t) const {
    double v = 0.0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
        const double w = kTwoPi * (k + 1);
        v -= cos_coeffs[k] * w * std::sin(w * t);
    }
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
        const double w = kTwoPi * (k + 1);
        v += sin_coeffs[k] * w * std::cos(w * t);
    }
    return v;
}

bool FourierSeries::is_zero() const {
    if (constant != 0.0) return false;
    auto nz = [](double x) { return x != 0.0; };
    return std::none_of(cos_coeffs.begin(), cos_coeffs.end(), nz) &&
           std::none_of(sin_coeffs.begin(), sin_coeffs.end(), nz);
}

FourierSeries FourierSeries::scaled(double factor) const {
    FourierSeries out = *this;
    out.constant *= factor;
    for (double& v : out.cos_coeffs) v *= factor;
    for (double& v : out.sin_coeffs) v *= factor;
    return out;
}

FourierSeries FourierSeries::shifted(double t0) const {
    // cos(w(t+t0)) = cos(w t0) cos(w t) - sin(w t0) sin(w t), etc.
    const std::size_t K =
        std::max(cos_coeffs.size(), sin_coeffs.size());
    FourierSeries out;
    out.constant = constant;
    out.cos_coeffs.assign(K, 0.0);
    out.sin_coeffs.assign(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const double a = k < cos_coeffs.size() ? cos_coeffs[k] : 0.0;
        const double b = k < sin_coeffs.size() ? sin_coeffs[k] : 0.0;
        const double c = std::cos(kTwoPi * (k + 1) * t0);
        const double s = std::sin(kTwoPi * (k + 1) * t0);
        out.cos_coeffs[k] = a * c + b * s;
        out.sin_coeffs[k] = -a * s + b * c;
    }
    return out;
}

CoefficientSet::CoefficientSet(FourierSeries p, FourierSeries q)
    : p_(std::move(p)), q_(std::move(q)) {
    // |p| + |p'| + |q| has kinks at the zeros; panel doubling to 1e-8.
    const int panels =
        4 * panels_for(std::max(p_.max_mode(), q_.max_mode()));
    kappa_ = integrate_adaptive(
        [this](double t) {
            return std::abs(p_.eval(t)) + std::abs(p_.eval_derivative(t)) +
                   std::abs(q_.eval(t));
        },
        0.0, 1.0, 1e-8, panels);
}

CoefficientSet CoefficientSet::scaled(double factor) const {
    return CoefficientSet(p_.scaled(factor), q_.scaled(factor));
}

CoefficientSet CoefficientSet::shifted(double t0) const {
    return CoefficientSet(p_.shifted(t0), q_.shifted(t0));
}

CoeffValues eval_coeffs(const CoefficientSet& c, double t) {
    return {c.p(t), c.p_prime(t), c.q(t)};
}

double fourier_p0(const CoefficientSet& c) { return c.p_series().constant; }

std::complex<double> fourier_pprime_n(const CoefficientSet& c, int n) {
    if (n < 1) throw PreconditionError("fourier_pprime_n requires n >= 1");
    // Orthogonality: only mode n of p' survives. With
    // p_hat_n = (a_n - i b_n)/2 the coefficient is i 2 pi n p_hat_n.
    const auto& p = c.p_series();
    const std::size_t k = static_cast<std::size_t>(n - 1);
    const double a = k < p.cos_coeffs.size() ? p.cos_coeffs[k] : 0.0;
    const double b = k < p.sin_coeffs.size() ? p.sin_coeffs[k] : 0.0;
    return std::complex<double>(0.0, kTwoPi * n) *
           (std::complex<double>(a, -b) / 2.0);
}

PerturbationMoments perturbation_moments(const CoefficientSet& c) {
    const int panels = panels_for(c.p_series().max_mode());
    auto v = [&](int nu) {
        auto outer = [&](double t) {
            auto inner = [&](double s) {
                return c.p(s) * c.p(t) * (nu - t + s) * (t - s);
            };
            if (t <= 0.0) return 0.0;
            return integrate_adaptive(inner, 0.0, t, 1e-11,
                                      std::max(2, static_cast<int>(
                                                      std::ceil(t * panels))));
        };
        return integrate_adaptive(outer, 0.0, static_cast<double>(nu), 1e-10,
                                  nu * panels);
    };
    return {v(1), v(2)};
}

Amplitude amplitude_A(const CoefficientSet& c) {
    const auto& p = c.p_series();
    if (std::abs(p.constant) > 1e-13)
        throw PreconditionError("amplitude_A requires mean-zero p");
    if (p.is_zero()) return {0.0, true};

    const auto [v1, v2] = perturbation_moments(c);
    const double a_moments = v2 / 12.0 - 4.0 * v1 / 3.0;

    // Primitive P(t) = int_0^t p, exact in the trig basis since p has no
    // mean, re-centered to zero mean: the quadratic functional is invariant
    // under time shifts only for the centered primitive, and the other two
    // formulas compute exactly that invariant.
    double pmean = 0.0;
    for (std::size_t k = 0; k < p.sin_coeffs.size(); ++k)
        pmean += p.sin_coeffs[k] / (kTwoPi * (k + 1));
    auto primitive = [&](double t) {
        double v = -pmean;
        for (std::size_t k = 0; k < p.cos_coeffs.size(); ++k) {
            const double w = kTwoPi * (k + 1);
            v += p.cos_coeffs[k] * std::sin(w * t) / w;
        }
        for (std::size_t k = 0; k < p.sin_coeffs.size(); ++k) {
            const double w = kTwoPi * (k + 1);
            v += p.sin_coeffs[k] * (1.0 - std::cos(w * t)) / w;
        }
        return v;
    };
    const int panels = panels_for(p.max_mode());
    const double a_primitive = integrate_adaptive(
        [&](double t) {
            const double v = primitive(t);
            return v * v;
        },
        0.0, 1.0, 1e-10, panels);

    const double a_autocorr = integrate_adaptive(
        [&](double u) {
            const double corr = integrate_adaptive(
                [&](double t) { return c.p(t) * c.p(t - u); }, u, 1.0, 1e-11,
                std::max(2, panels));
            return u * (u - 1.0) * corr;
        },
        0.0, 1.0, 1e-10, panels);

    const double scale = std::max({1e-30, std::abs(a_primitive)});
    if (std::abs(a_moments - a_primitive) > 1e-8 * std::max(1e-12, scale) ||
        std::abs(a_autocorr - a_primitive) > 1e-8 * std::max(1e-12, scale))
        throw NumericalError(
            "amplitude_A: the three formulas disagree (moments=" +
            std::to_string(a_moments) + ", primitive=" +
            std::to_string(a_primitive) + ", autocorr=" +
            std::to_string(a_autocorr) + ")");
    if (a_primitive < 0.0)
        throw NumericalError("amplitude_A: negative primitive-square integral");
    return {a_primitive, false};
}

} // namespace fourband
