#include "fourband/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "fourband/quadrature.hpp"
#include "fourband/reference.hpp"

namespace fourband {

namespace {

using C = std::complex<double>;
// Row-major 4x4 blocks: entry (k, j) at [4k + j]; the optional derivative
// block follows at offset 16.
using State = std::vector<C>;

class CompanionRhs {
public:
    CompanionRhs(const CoefficientSet& c, C lambda, bool with_derivative)
        : c_(c), lambda_(lambda), with_derivative_(with_derivative) {}

    void operator()(const State& s, State& ds, double t) const {
        const auto [p, pp, q] = eval_coeffs(c_, t);
        const C a0 = lambda_ - q;
        ds.resize(s.size());
        apply(s.data(), ds.data(), a0, pp, p);
        if (with_derivative_) {
            apply(s.data() + 16, ds.data() + 16, a0, pp, p);
            // inhomogeneous term (dA/dlambda) M: unit entry at (3, 0)
            for (int j = 0; j < 4; ++j) ds[16 + 12 + j] += s[j];
        }
    }

private:
    static void apply(const C* m, C* dm, C a0, double pp, double p) {
        for (int j = 0; j < 4; ++j) {
            dm[j] = m[4 + j];
            dm[4 + j] = m[8 + j];
            dm[8 + j] = m[12 + j];
            dm[12 + j] = a0 * m[j] - pp * m[4 + j] - p * m[8 + j];
        }
    }

    const CoefficientSet& c_;
    C lambda_;
    bool with_derivative_;
};

State run_integration(const CoefficientSet& c, const SpectralPoint& pt,
                      bool want_derivative, double tol) {
    namespace ode = boost::numeric::odeint;
    State s(want_derivative ? 32 : 16, C(0.0));
    for (int k = 0; k < 4; ++k) s[4 * k + k] = 1.0;

    CompanionRhs rhs(c, pt.lambda, want_derivative);
    auto stepper =
        ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State>());

    double t = 0.0;
    double h = std::min(0.1, 0.5 / pt.z1);
    const long cap = 2000000;
    long attempts = 0;
    while (t < 1.0) {
        h = std::min(h, 1.0 - t);
        ode::controlled_step_result r = stepper.try_step(rhs, s, t, h);
        if (++attempts > cap)
            throw NumericalError(
                "monodromy integration exceeded the step cap at |lambda| = " +
                std::to_string(std::abs(pt.lambda)));
        (void)r;
    }
    return s;
}

} // namespace

MonodromyResult integrate_monodromy(const CoefficientSet& c,
                                    const SpectralPoint& pt,
                                    bool want_derivative, double tol) {
    if (pt.x > kOverflowClampX)
        throw PreconditionError(
            "lambda beyond the overflow clamp: Re lambda^{1/4} = " +
            std::to_string(pt.x) + " > " + std::to_string(kOverflowClampX));

    const State coarse = run_integration(c, pt, want_derivative, tol);
    const State fine = run_integration(c, pt, want_derivative, tol * 1e-2);

    MonodromyResult out;
    out.has_derivative = want_derivative;
    double err = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) {
            out.M(k, j) = fine[4 * k + j];
            err = std::max(err, std::abs(fine[4 * k + j] - coarse[4 * k + j]));
            if (want_derivative) out.dM_dlambda(k, j) = fine[16 + 4 * k + j];
        }
    out.err_est = err;
    return out;
}

namespace {

// Scalar interaction kernel of the rank-one perturbation:
// k(s, d) = -( q(s) phi_3(d) + p'(s) phi_2(d) + p(s) phi_1(d) ).
C kernel(const CoefficientSet& c, const SpectralPoint& pt, double s, double d) {
    const auto [p, pp, q] = eval_coeffs(c, s);
    return -(q * free_solutions(pt, d, 3) + pp * free_solutions(pt, d, 2) +
             p * free_solutions(pt, d, 1));
}

// Basis beta(t) = (cosh zt, sinh zt, cos zt, sin zt) and the coefficient
// row of phi_j(a - t) in that basis.
std::array<C, 4> beta_basis(const SpectralPoint& pt, double t) {
    const C w = pt.z * t;
    return {std::cosh(w), std::sinh(w), std::cos(w), std::sin(w)};
}

std::array<C, 4> phi_shift_row(const SpectralPoint& pt, double a, int j) {
    const C w = pt.z * a;
    const C c0 = std::cosh(w), c1 = std::sinh(w);
    const C c2 = std::cos(w), c3 = std::sin(w);
    const C z = pt.z;
    switch (j) {
        case 0: return {c0 / 2.0, -c1 / 2.0, c2 / 2.0, c3 / 2.0};
        case 1: {
            const C d = 2.0 * z;
            return {c1 / d, -c0 / d, c3 / d, -c2 / d};
        }
        case 2: {
            const C d = 2.0 * z * z;
            return {c0 / d, -c1 / d, -c2 / d, -c3 / d};
        }
        default: {
            const C d = 2.0 * z * z * z;
            return {c1 / d, -c0 / d, -c3 / d, c2 / d};
        }
    }
}

struct ChebGrid {
    std::vector<double> nodes;    // Chebyshev-Lobatto on [0, L]
    std::vector<double> weights;  // barycentric
    double L;

    explicit ChebGrid(double len, int count) : L(len) {
        nodes.resize(count + 1);
        weights.resize(count + 1);
        for (int i = 0; i <= count; ++i) {
            nodes[i] = L / 2.0 * (1.0 - std::cos(M_PI * i / count));
            weights[i] = (i % 2 == 0 ? 1.0 : -1.0);
        }
        weights.front() *= 0.5;
        weights.back() *= 0.5;
    }

    C interp(const std::vector<C>& vals, double t) const {
        C num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double d = t - nodes[i];
            if (std::abs(d) < 1e-14 * std::max(1.0, L)) return vals[i];
            const double w = weights[i] / d;
            num += w * vals[i];
            den += w;
        }
        return num / den;
    }
};

} // namespace

PicardTraces picard_series_traces(const CoefficientSet& c,
                                  const SpectralPoint& pt, int N) {
    if (N < 0 || N > 6)
        throw PreconditionError("picard_series_traces: N must be 0..6");
    const double kappa = c.kappa();

    PicardTraces out;
    double nf = 1.0;
    for (int m = 1; m <= N; ++m) nf *= m;
    out.bound = 4.0 * std::pow(2.0 * kappa, N) *
                std::exp(2.0 * pt.x + kappa) / (nf * std::pow(pt.z1, N));
    out.T1_partial = 0.0;
    out.T2_partial = 0.0;
    if (N == 0) return out;

    const double az = std::abs(pt.z);
    const int panels_per_unit = 3 + static_cast<int>(az);
    const int grid_count = 96;
    const int gl_order = 16;

    for (int nu = 1; nu <= 2; ++nu) {
        const double L = nu;
        const C chz = std::cosh(C(nu) * pt.z), coz = std::cos(C(nu) * pt.z);
        C trace = (chz + coz) / 2.0;  // T_nu^0, the n = 0 term

        if (N > 1) {
            ChebGrid grid(L, grid_count);
            const std::size_t G = grid.nodes.size();
            // u_b(s): chain values; initialized with
            // alpha_b(s) = coefficient of beta_b(t) in k(s, nu + s - t).
            std::array<std::vector<C>, 4> u;
            for (auto& v : u) v.assign(G, C(0.0));
            for (std::size_t i = 0; i < G; ++i) {
                const double s = grid.nodes[i];
                const auto [p, pp, q] = eval_coeffs(c, s);
                const auto r1 = phi_shift_row(pt, nu + s, 1);
                const auto r2 = phi_shift_row(pt, nu + s, 2);
                const auto r3 = phi_shift_row(pt, nu + s, 3);
                for (int b = 0; b < 4; ++b)
                    u[b][i] = -(q * r3[b] + pp * r2[b] + p * r1[b]);
            }

            for (int term = 1; term < N; ++term) {
                // trace contribution of this term:
                // int_0^nu sum_b beta_b(t) u_b(t) dt
                auto integrand = [&](double t) {
                    const auto bb = beta_basis(pt, t);
                    C v = 0.0;
                    for (int b = 0; b < 4; ++b)
                        v += bb[b] * grid.interp(u[b], t);
                    return v;
                };
                const C tn = detail::integrate_panels(
                    integrand, 0.0, L, std::max(4, nu * panels_per_unit),
                    gl_order);
                trace += tn / 4.0;

                if (term + 1 >= N) break;
                // Volterra update: u_b(s) <- int_0^s k(s, s - s') u_b(s') ds'
                std::array<std::vector<C>, 4> next;
                for (auto& v : next) v.assign(G, C(0.0));
                for (std::size_t i = 1; i < G; ++i) {
                    const double s = grid.nodes[i];
                    const int panels = std::max(
                        2, static_cast<int>(std::ceil(s * panels_per_unit)));
                    const auto& rule = gauss_legendre(gl_order);
                    const double h = s / panels;
                    std::array<C, 4> acc{};
                    for (int pnl = 0; pnl < panels; ++pnl) {
                        const double mid = (pnl + 0.5) * h;
                        for (const auto& [xg, wg] : rule) {
                            const double sp = mid + 0.5 * h * xg;
                            const C kv = kernel(c, pt, s, s - sp);
                            for (int b = 0; b < 4; ++b)
                                acc[b] += wg * kv * grid.interp(u[b], sp);
                        }
                    }
                    for (int b = 0; b < 4; ++b) next[b][i] = 0.5 * h * acc[b];
                }
                u = next;
            }
        }

        if (nu == 1)
            out.T1_partial = trace;
        else
            out.T2_partial = trace;
    }
    return out;
}

std::complex<double> eta_nu(const CoefficientSet& c, const SpectralPoint& pt,
                            int nu) {
    if (nu != 1 && nu != 2) throw PreconditionError("eta_nu: nu must be 1 or 2");
    if (!c.q_is_zero())
        throw PreconditionError("eta_nu requires q identically zero");
    if (std::abs(fourier_p0(c)) > 1e-13)
        throw PreconditionError("eta_nu requires mean-zero p");
    const int panels =
        std::max(4, 2 * c.p_series().max_mode() + static_cast<int>(std::abs(pt.z)));
    auto outer = [&](double t) -> C {
        if (t <= 0.0) return C(0.0);
        auto inner = [&](double s) -> C {
            return c.p(s) * c.p(t) * free_solutions(pt, nu - t + s, 1) *
                   free_solutions(pt, t - s, 1);
        };
        return integrate_adaptive(inner, 0.0, t, 1e-11,
                                  std::max(2, static_cast<int>(std::ceil(
                                                  t * panels))));
    };
    return integrate_adaptive(outer, 0.0, double(nu), 1e-10, nu * panels);
}

} // namespace fourband
