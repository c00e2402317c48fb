#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fourband/discriminants.hpp"
#include "fourband/reference.hpp"

using namespace fourband;
using C = std::complex<double>;

namespace {

CoefficientSet random_set(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    FourierSeries p, q;
    p.cos_coeffs = {u(rng), u(rng)};
    p.sin_coeffs = {u(rng)};
    q.constant = u(rng);
    q.cos_coeffs = {u(rng)};
    return CoefficientSet(p, q);
}

double identity_residual(const DiscriminantBundle& b) {
    const double scale = std::max(1.0, std::abs(b.T2));
    double res = 0.0;
    auto upd = [&](C lhs, C rhs) {
        res = std::max(res, std::abs(lhs - rhs) / scale);
    };
    upd(b.T, 4.0 * b.T1 * b.T1 - b.T2);
    upd(b.rho, (b.T2 + 1.0) / 2.0 - b.T1 * b.T1);
    upd(b.Dplus, (b.T - 4.0 * b.T1 + 1.0) / 2.0);
    upd(b.Dminus, (b.T + 4.0 * b.T1 + 1.0) / 2.0);
    upd(b.Dplus - b.Dminus, -4.0 * b.T1);
    upd(b.Dplus, (b.T1 - 1.0) * (b.T1 - 1.0) - b.rho);
    upd(b.Dminus, (b.T1 + 1.0) * (b.T1 + 1.0) - b.rho);
    upd(b.Delta1 * b.Delta1 + b.Delta2 * b.Delta2, 1.0 + b.T2);
    upd(b.Delta1 * b.Delta2, (b.T - 1.0) / 2.0);
    return res;
}

} // namespace

TEST_CASE("identity property suite over random coefficients") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> mag(0.3, 3.2);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 8; ++trial) {
        const CoefficientSet c = random_set(rng);
        for (int k = 0; k < 6; ++k) {
            C lam = std::polar(std::pow(10.0, mag(rng)), ph(rng));
            if (k % 2 == 0) lam = C(std::abs(lam) * (k % 4 == 0 ? 1 : -1), 0);
            const auto b = bundle(c, SpectralPoint(lam));
            CHECK(identity_residual(b) < 1e-9);
        }
    }
}

TEST_CASE("characteristic polynomial residual stays small") {
    FourierSeries pone;
    pone.constant = 1.0;
    const CoefficientSet c(pone, {});
    CHECK(char_poly_check(c, SpectralPoint(C(5.0, 0.0))) < 1e-9);
    CHECK(char_poly_check(c, SpectralPoint(C(-120.0, 35.0))) < 1e-9);

    std::mt19937 rng(11);
    const CoefficientSet r = random_set(rng);
    for (C lam : {C(250.0, 0.0), C(-1.0e4, 0.0), C(2000.0, -3000.0)})
        CHECK(char_poly_check(r, SpectralPoint(lam)) < 1e-8);
}

TEST_CASE("free multipliers at the first antiperiodic point") {
    const SpectralPoint pt{C(std::pow(M_PI, 4), 0.0)};
    const auto m = multipliers(free_discriminants(pt));
    // reciprocal pairing by construction
    CHECK(std::abs(m[0] * m[1] - 1.0) < 1e-10);
    CHECK(std::abs(m[2] * m[3] - 1.0) < 1e-10);
    // the set is {e^pi, e^-pi, -1, -1}
    double best_exp = 1e300, count_minus_one = 0;
    for (const C& tau : m) {
        best_exp = std::min(best_exp, std::abs(tau - std::exp(M_PI)));
        if (std::abs(tau + 1.0) < 1e-6) ++count_minus_one;
    }
    CHECK(best_exp < 1e-8 * std::exp(M_PI));
    CHECK(count_minus_one == 2);
}

TEST_CASE("multipliers are roots of the quadratic factors") {
    std::mt19937 rng(3);
    const CoefficientSet c = random_set(rng);
    for (C lam : {C(77.0, 0.0), C(-500.0, 0.0), C(120.0, 80.0)}) {
        const auto b = bundle(c, SpectralPoint(lam));
        const auto m = multipliers(b);
        const C d1 = b.Delta1, d2 = b.Delta2;
        const double s1 = std::max(1.0, std::abs(m[0]) * std::abs(m[0]));
        const double s2 = std::max(1.0, std::abs(m[2]) * std::abs(m[2]));
        CHECK(std::abs(m[0] * m[0] - 2.0 * d1 * m[0] + 1.0) < 1e-8 * s1);
        CHECK(std::abs(m[2] * m[2] - 2.0 * d2 * m[2] + 1.0) < 1e-8 * s2);
    }
}

TEST_CASE("spectral indicator of the free operator") {
    // positive axis: one branch on the unit band, the other above
    const auto inside = free_discriminants(SpectralPoint(C(50.0, 0.0)));
    CHECK(spectral_indicator(inside) == 2);
    // negative axis: complex branch pair, no spectrum
    const auto gap = free_discriminants(SpectralPoint(C(-50.0, 0.0)));
    CHECK(spectral_indicator(gap) == 0);
}

TEST_CASE("branch ordering and realness on the real axis") {
    std::mt19937 rng(9);
    const CoefficientSet c = random_set(rng);
    const auto b = bundle(c, SpectralPoint(C(35.0, 0.0)));
    CHECK(b.branch_real);
    CHECK(b.Delta1.imag() == 0.0);
    CHECK(b.Delta2.imag() == 0.0);
    CHECK(b.Delta1.real() >= b.Delta2.real());
}

TEST_CASE("bundle derivatives follow finite differences") {
    std::mt19937 rng(21);
    const CoefficientSet c = random_set(rng);
    for (C lam : {C(60.0, 0.0), C(-240.0, 0.0)}) {
        const auto bd = bundle_with_derivative(c, SpectralPoint(lam));
        const double h = 1e-4 * std::max(1.0, std::abs(lam));
        const auto bp = bundle(c, SpectralPoint(lam + h));
        const auto bm = bundle(c, SpectralPoint(lam - h));
        auto fd = [&](C a, C b2) { return (a - b2) / (2.0 * h); };
        const double scale =
            std::max(1.0, std::abs(fd(bp.T2, bm.T2)));
        CHECK(std::abs(bd.d.dT1 - fd(bp.T1, bm.T1)) < 1e-5 * scale);
        CHECK(std::abs(bd.d.dT2 - fd(bp.T2, bm.T2)) < 1e-5 * scale);
        CHECK(std::abs(bd.d.drho - fd(bp.rho, bm.rho)) < 1e-5 * scale);
        CHECK(std::abs(bd.d.dDplus - fd(bp.Dplus, bm.Dplus)) < 1e-5 * scale);
        CHECK(std::abs(bd.d.dDminus - fd(bp.Dminus, bm.Dminus)) <
              1e-5 * scale);
    }
}

TEST_CASE("Lyapunov branch derivative does not vanish inside a band") {
    // free operator, midband sample points: d/dlambda of cos z is
    // sin(z) / (4 z^3) != 0 away from the band edges
    for (double z : {0.6 * M_PI, 1.3 * M_PI, 2.5 * M_PI}) {
        const double lam = std::pow(z, 4);
        const double h = 1e-4 * lam;
        const auto bp = free_discriminants(SpectralPoint(C(lam + h, 0.0)));
        const auto bm = free_discriminants(SpectralPoint(C(lam - h, 0.0)));
        const double d2 = (bp.Delta2.real() - bm.Delta2.real()) / (2.0 * h);
        CHECK(std::abs(d2) > 1e-8);
    }
}
