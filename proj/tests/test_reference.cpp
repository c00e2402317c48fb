#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fourband/reference.hpp"

using namespace fourband;
using C = std::complex<double>;

TEST_CASE("fundamental solutions at a real spectral point") {
    const SpectralPoint pt{C(16.0, 0.0)};  // z = 2
    CHECK(pt.z.real() == doctest::Approx(2.0));
    const double t = 1.0;
    CHECK(free_solutions(pt, t, 0).real() ==
          doctest::Approx((std::cosh(2.0) + std::cos(2.0)) / 2.0));
    CHECK(free_solutions(pt, t, 1).real() ==
          doctest::Approx((std::sinh(2.0) + std::sin(2.0)) / 4.0));
    CHECK(free_solutions(pt, t, 2).real() ==
          doctest::Approx((std::cosh(2.0) - std::cos(2.0)) / 8.0));
    CHECK(free_solutions(pt, t, 3).real() ==
          doctest::Approx((std::sinh(2.0) - std::sin(2.0)) / 16.0));
}

TEST_CASE("normalization at t = 0") {
    const SpectralPoint pt{C(-7.0, 3.0)};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const C v = free_solution_index(pt, 0.0, j - k);
            if (j == k)
                CHECK(std::abs(v - 1.0) < 1e-12);
            else
                CHECK(std::abs(v) < 1e-12);
        }
}

TEST_CASE("entire limit at lambda = 0") {
    const SpectralPoint pt{C(0.0, 0.0)};
    for (int j = 0; j < 4; ++j) {
        double fact = 1.0;
        for (int i = 2; i <= j; ++i) fact *= i;
        CHECK(std::abs(free_solutions(pt, 0.7, j) -
                       std::pow(0.7, j) / fact) < 1e-14);
    }
}

TEST_CASE("series branch joins the closed form continuously") {
    // |z t| just below and above the series switch-over
    for (double lam : {1e-9, 2e-8, 1e-12}) {
        const SpectralPoint pt{C(lam, 0.0)};
        for (int j = 0; j < 4; ++j) {
            const C a = free_solutions(pt, 1.0, j);
            double fact = 1.0;
            for (int i = 2; i <= j; ++i) fact *= i;
            CHECK(std::abs(a - 1.0 / fact) < 1e-6 / fact);
        }
    }
}

TEST_CASE("index extension multiplies by lambda every four steps") {
    const SpectralPoint pt{C(5.0, -2.0)};
    for (int j = 1; j < 4; ++j) {
        const C low = free_solution_index(pt, 0.6, j - 4);
        const C high = free_solution_index(pt, 0.6, j);
        CHECK(std::abs(low - pt.lambda * high) <
              1e-12 * std::max(1.0, std::abs(low)));
    }
}

TEST_CASE("free discriminants at z = pi") {
    const SpectralPoint pt{C(std::pow(M_PI, 4), 0.0)};
    const DiscriminantBundle b = free_discriminants(pt);
    const double ch = std::cosh(M_PI);
    CHECK(b.T1.real() == doctest::Approx((ch - 1.0) / 2.0));
    CHECK(b.rho.real() == doctest::Approx((ch + 1.0) * (ch + 1.0) / 4.0));
    CHECK(std::abs(b.Dminus) < 1e-10 * ch * ch);
    CHECK(b.Delta1.real() == doctest::Approx(ch));
    CHECK(b.Delta2.real() == doctest::Approx(-1.0));
    CHECK(b.branch_real);
}

TEST_CASE("bundle identities close on the free formulas") {
    for (C lam : {C(30.0, 0.0), C(-250.0, 0.0), C(100.0, 170.0),
                  C(-40.0, -90.0), C(1e4, 0.0)}) {
        const SpectralPoint pt{lam};
        const DiscriminantBundle b = free_discriminants(pt);
        const double scale = std::max(1.0, std::abs(b.T2));
        CHECK(std::abs(b.T - (4.0 * b.T1 * b.T1 - b.T2)) < 1e-12 * scale);
        CHECK(std::abs(b.rho - ((b.T2 + 1.0) / 2.0 - b.T1 * b.T1)) <
              1e-12 * scale);
        CHECK(std::abs(b.Dplus - (b.T - 4.0 * b.T1 + 1.0) / 2.0) <
              1e-12 * scale);
        CHECK(std::abs(b.Dminus - (b.T + 4.0 * b.T1 + 1.0) / 2.0) <
              1e-12 * scale);
        CHECK(std::abs(b.Delta1 * b.Delta1 + b.Delta2 * b.Delta2 -
                       (1.0 + b.T2)) < 1e-11 * scale);
        CHECK(std::abs(b.Delta1 * b.Delta2 - (b.T - 1.0) / 2.0) <
              1e-11 * scale);
    }
}

TEST_CASE("rho is non-positive on the negative real axis") {
    for (double lam = -2000.0; lam < -0.5; lam += 13.7) {
        const SpectralPoint pt{C(lam, 0.0)};
        const DiscriminantBundle b = free_discriminants(pt);
        CHECK(std::abs(b.rho.imag()) < 1e-9 * std::max(1.0, std::abs(b.rho)));
        CHECK(b.rho.real() < 1e-9 * std::max(1.0, std::abs(b.rho)));
    }
}

TEST_CASE("exponential lower bound away from the resonance disks") {
    int tested = 0;
    for (double mag = 1.0; mag <= 1e6; mag *= 3.1)
        for (double arg = 0.05; arg < 2.0 * M_PI; arg += 0.37) {
            const SpectralPoint pt{std::polar(mag, arg)};
            if (!in_rho_lower_bound_domain(pt)) continue;
            if (pt.x > 20.0) continue;
            const DiscriminantBundle b = free_discriminants(pt);
            CHECK(std::abs(b.rho) > std::exp(2.0 * pt.x) / 256.0);
            ++tested;
        }
    CHECK(tested > 50);
}

TEST_CASE("labeled free tables") {
    const FreeSpectrumLabels f = free_spectrum_labels(2);
    REQUIRE(f.periodic.size() == 3);
    CHECK(f.periodic[0].lambda == 0.0);
    CHECK(f.periodic[0].multiplicity == 1);
    CHECK(f.periodic[1].lambda ==
          doctest::Approx(std::pow(2.0 * M_PI, 4)));
    CHECK(f.periodic[1].multiplicity == 2);
    CHECK(f.periodic[2].lambda ==
          doctest::Approx(std::pow(4.0 * M_PI, 4)));
    REQUIRE(f.antiperiodic.size() == 2);
    CHECK(f.antiperiodic[0].lambda == doctest::Approx(std::pow(M_PI, 4)));
    CHECK(f.antiperiodic[0].multiplicity == 2);
    CHECK(f.antiperiodic[1].lambda ==
          doctest::Approx(std::pow(3.0 * M_PI, 4)));
    REQUIRE(f.resonances.size() == 3);
    CHECK(f.resonances[0].lambda == 0.0);
    CHECK(f.resonances[0].multiplicity == 1);
    CHECK(f.resonances[1].lambda ==
          doctest::Approx(-4.0 * std::pow(M_PI, 4)));
    CHECK(f.resonances[1].multiplicity == 2);
    CHECK(f.resonances[2].lambda ==
          doctest::Approx(-4.0 * std::pow(2.0 * M_PI, 4)));
}

TEST_CASE("quarter-root convention on the negative axis") {
    const SpectralPoint pt{C(-16.0, 0.0)};
    CHECK(pt.z.real() == doctest::Approx(2.0 * std::cos(M_PI / 4.0)));
    CHECK(pt.z.imag() == doctest::Approx(2.0 * std::sin(M_PI / 4.0)));
    CHECK(pt.x >= std::abs(pt.y) - 1e-12);
    // the sector is closed on the upper edge
    const SpectralPoint below{C(-16.0, -1e-9)};
    CHECK(below.z.imag() < 0.0);
    CHECK(below.x >= std::abs(below.y) - 1e-9);
}
