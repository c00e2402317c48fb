#ifndef FOURBAND_QUADRATURE_HPP
#define FOURBAND_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fourband/errors.hpp"

namespace fourband {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Cached per order; thread-safe after first use of a given order.
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

namespace detail {

template <typename F>
auto integrate_panels(F&& f, double a, double b, int panels, int order)
    -> decltype(f(0.0)) {
    using R = decltype(f(0.0));
    const auto& rule = gauss_legendre(order);
    const double h = (b - a) / panels;
    R sum{};
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        R acc{};
        for (const auto& [x, w] : rule) acc += w * f(mid + 0.5 * h * x);
        sum += 0.5 * h * acc;
    }
    return sum;
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

} // namespace detail

/// Composite Gauss-Legendre with panel doubling until two successive
/// refinements agree to `rel_tol` relative (or `rel_tol` absolute for
/// results of magnitude below 1).
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol,
                        int initial_panels = 4, int order = 16,
                        int max_doublings = 12) -> decltype(f(0.0)) {
    auto prev = detail::integrate_panels(f, a, b, initial_panels, order);
    int panels = initial_panels;
    for (int k = 0; k < max_doublings; ++k) {
        panels *= 2;
        auto cur = detail::integrate_panels(f, a, b, panels, order);
        const double scale = std::max(1.0, detail::magnitude(cur));
        if (detail::magnitude(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw NumericalError("quadrature failed to converge on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
}

} // namespace fourband

#endif
