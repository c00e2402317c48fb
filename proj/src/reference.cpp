#include "fourband/reference.hpp"

#include <cmath>

namespace fourband {

namespace {

using C = std::complex<double>;

// Taylor fallback for |zt| below this: the (cosh - cos)-type differences
// cancel to O(w^2) and lose about 2 log10|w| digits directly.
constexpr double kSeriesCutoff = 1e-2;

C phi_series(const SpectralPoint& pt, double t, int j) {
    // phi_j = t^j sum_k w^{4k} / (4k + j)!, w = z t; 8 terms are far
    // below double precision at |w| < 1e-2.
    const C w4 = std::pow(pt.z * t, 4);
    C sum = 0.0;
    C pw = 1.0;
    double fact = 1.0;
    for (int m = 1; m <= j; ++m) fact *= m;
    for (int k = 0; k < 8; ++k) {
        if (k > 0) {
            pw *= w4;
            for (int m = 4 * (k - 1) + j + 1; m <= 4 * k + j; ++m) pw /= double(m);
        }
        sum += pw;
    }
    double tj = 1.0;
    for (int m = 0; m < j; ++m) tj *= t;
    return tj / fact * sum;
}

} // namespace

std::complex<double> free_solutions(const SpectralPoint& pt, double t, int j) {
    if (j < 0 || j > 3) throw PreconditionError("free_solutions: j must be 0..3");
    if (t < 0.0 || t > 2.0)
        throw PreconditionError("free_solutions: t must lie in [0, 2]");
    const C w = pt.z * t;
    if (std::abs(w) < kSeriesCutoff) return phi_series(pt, t, j);
    const C ch = std::cosh(w), co = std::cos(w);
    const C sh = std::sinh(w), si = std::sin(w);
    switch (j) {
        case 0: return (ch + co) / 2.0;
        case 1: return (sh + si) / (2.0 * pt.z);
        case 2: return (ch - co) / (2.0 * pt.z * pt.z);
        default: return (sh - si) / (2.0 * pt.z * pt.z * pt.z);
    }
}

std::complex<double> free_solution_index(const SpectralPoint& pt, double t,
                                         int j) {
    if (j < -3 || j > 3)
        throw PreconditionError("free_solution_index: j must be -3..3");
    if (j >= 0) return free_solutions(pt, t, j);
    return pt.lambda * free_solutions(pt, t, j + 4);
}

DiscriminantBundle free_discriminants(const SpectralPoint& pt) {
    const C z = pt.z;
    const C ch = std::cosh(z), co = std::cos(z);
    DiscriminantBundle b;
    b.T1 = (ch + co) / 2.0;
    b.T2 = (std::cosh(2.0 * z) + std::cos(2.0 * z)) / 2.0;
    b.T = 1.0 + 2.0 * ch * co;
    const C d = (ch - co) / 2.0;
    b.rho = d * d;
    b.Dplus = (co - 1.0) * (ch - 1.0);
    b.Dminus = (co + 1.0) * (ch + 1.0);
    b.Delta1 = ch;
    b.Delta2 = co;
    if (pt.is_real()) {
        b.T1 = b.T1.real();
        b.T2 = b.T2.real();
        b.T = b.T.real();
        b.rho = b.rho.real();
        b.Dplus = b.Dplus.real();
        b.Dminus = b.Dminus.real();
        b.branch_real = b.rho.real() >= 0.0;
        if (b.branch_real) {
            // On the real axis sort the branches: Delta1 >= Delta2.
            const double s = std::sqrt(b.rho.real());
            b.Delta1 = b.T1.real() + s;
            b.Delta2 = b.T1.real() - s;
        } else {
            const double s = std::sqrt(-b.rho.real());
            b.Delta1 = C(b.T1.real(), s);
            b.Delta2 = C(b.T1.real(), -s);
        }
    }
    return b;
}

FreeSpectrumLabels free_spectrum_labels(int N) {
    if (N < 1) throw PreconditionError("free_spectrum_labels: N must be >= 1");
    FreeSpectrumLabels out;
    out.periodic.push_back({0.0, 1});
    out.resonances.push_back({0.0, 1});
    for (int n = 1; n <= N; ++n) {
        out.periodic.push_back({std::pow(2.0 * M_PI * n, 4), 2});
        out.antiperiodic.push_back({std::pow(M_PI * (2 * n - 1), 4), 2});
        out.resonances.push_back({-4.0 * std::pow(M_PI * n, 4), 2});
    }
    return out;
}

bool in_rho_lower_bound_domain(const SpectralPoint& pt) {
    const double r = M_PI / (2.0 * std::sqrt(2.0));
    const double s = std::abs(pt.z) / M_PI + 1.0;
    for (int n = 0; n <= static_cast<int>(s); ++n) {
        const C cp(M_PI * n, M_PI * n);
        if (std::abs(pt.z - cp) <= r || std::abs(pt.z - std::conj(cp)) <= r)
            return false;
    }
    return true;
}

} // namespace fourband
