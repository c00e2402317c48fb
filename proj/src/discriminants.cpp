#include "fourband/discriminants.hpp"

#include <cmath>

#include "fourband/monodromy.hpp"

namespace fourband {

namespace {
using C = std::complex<double>;
}

DiscriminantBundle bundle_from_traces(C T1, C T2, bool real_axis) {
    DiscriminantBundle b;
    if (real_axis) {
        T1 = T1.real();
        T2 = T2.real();
    }
    b.T1 = T1;
    b.T2 = T2;
    b.T = 4.0 * T1 * T1 - T2;
    b.rho = (T2 + 1.0) / 2.0 - T1 * T1;
    b.Dplus = (b.T - 4.0 * T1 + 1.0) / 2.0;
    b.Dminus = (b.T + 4.0 * T1 + 1.0) / 2.0;
    if (real_axis) {
        b.branch_real = b.rho.real() >= 0.0;
        if (b.branch_real) {
            const double s = std::sqrt(b.rho.real());
            b.Delta1 = T1.real() + s;
            b.Delta2 = T1.real() - s;
        } else {
            const double s = std::sqrt(-b.rho.real());
            b.Delta1 = C(T1.real(), s);
            b.Delta2 = C(T1.real(), -s);
        }
    } else {
        const C s = std::sqrt(b.rho);
        b.Delta1 = T1 + s;
        b.Delta2 = T1 - s;
    }
    return b;
}

DiscriminantBundle bundle(const CoefficientSet& c, const SpectralPoint& pt) {
    const MonodromyResult mr = integrate_monodromy(c, pt, false);
    const C T1 = mr.M.trace() / 4.0;
    const C T2 = (mr.M * mr.M).trace() / 4.0;
    return bundle_from_traces(T1, T2, pt.is_real());
}

BundleWithDerivative bundle_with_derivative(const CoefficientSet& c,
                                            const SpectralPoint& pt) {
    const MonodromyResult mr = integrate_monodromy(c, pt, true);
    const C T1 = mr.M.trace() / 4.0;
    const C T2 = (mr.M * mr.M).trace() / 4.0;
    BundleWithDerivative out;
    out.b = bundle_from_traces(T1, T2, pt.is_real());
    out.d.dT1 = mr.dM_dlambda.trace() / 4.0;
    out.d.dT2 = (mr.M * mr.dM_dlambda).trace() / 2.0;
    out.d.dT = 8.0 * out.b.T1 * out.d.dT1 - out.d.dT2;
    out.d.drho = out.d.dT2 / 2.0 - 2.0 * out.b.T1 * out.d.dT1;
    out.d.dDplus = (out.d.dT - 4.0 * out.d.dT1) / 2.0;
    out.d.dDminus = (out.d.dT + 4.0 * out.d.dT1) / 2.0;
    return out;
}

double char_poly_check(const CoefficientSet& c, const SpectralPoint& pt) {
    const MonodromyResult mr = integrate_monodromy(c, pt, false);
    const Eigen::Matrix4cd M2 = mr.M * mr.M;
    const Eigen::Matrix4cd M3 = M2 * mr.M;
    const C s1 = mr.M.trace(), s2 = M2.trace(), s3 = M3.trace(),
            s4 = (M2 * M2).trace();
    // Newton's identities: det(M - tau I) = tau^4 - e1 tau^3 + e2 tau^2
    //                                       - e3 tau + e4.
    const C e1 = s1;
    const C e2 = (e1 * s1 - s2) / 2.0;
    const C e3 = (e2 * s1 - e1 * s2 + s3) / 3.0;
    const C e4 = (e3 * s1 - e2 * s2 + e1 * s3 - s4) / 4.0;

    const C T1 = s1 / 4.0, T2 = s2 / 4.0;
    const C T = 4.0 * T1 * T1 - T2;
    const C expect[4] = {4.0 * T1, 2.0 * T, 4.0 * T1, C(1.0)};
    const C got[4] = {e1, e2, e3, e4};
    // The k-th coefficient is assembled from products of k matrix entries,
    // so its achievable accuracy scales like |M|^k; measure relative to that.
    const double nf = std::max(1.0, mr.M.norm());
    double res = 0.0;
    double scale = 1.0;
    for (int i = 0; i < 4; ++i) {
        scale *= nf;
        res = std::max(res,
                       std::abs(got[i] - expect[i]) /
                           std::max({1.0, std::abs(expect[i]), scale}));
    }
    return res;
}

std::array<std::complex<double>, 4> multipliers(const DiscriminantBundle& b) {
    auto pair_of = [](C delta) {
        // tau = delta +- sqrt(delta^2 - 1); keep the larger-modulus root
        // to dodge cancellation, partner as its reciprocal.
        const C s = std::sqrt(delta * delta - 1.0);
        const C tau = std::abs(delta + s) >= std::abs(delta - s) ? delta + s
                                                                 : delta - s;
        return std::array<C, 2>{tau, 1.0 / tau};
    };
    const auto p1 = pair_of(b.Delta1);
    const auto p2 = pair_of(b.Delta2);
    return {p1[0], p1[1], p2[0], p2[1]};
}

int spectral_indicator(const DiscriminantBundle& b) {
    if (!b.branch_real) return 0;
    int count = 0;
    for (const C d : {b.Delta1, b.Delta2})
        if (std::abs(d.real()) <= 1.0) ++count;
    return 2 * count;
}

} // namespace fourband
