#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fourband/spectrum.hpp"
#include "fourband/zeros.hpp"

using namespace fourband;
using C = std::complex<double>;

namespace {

CoefficientSet free_set() { return CoefficientSet({}, {}); }

CoefficientSet sin_set(double amp) {
    FourierSeries p;
    p.sin_coeffs = {amp};
    return CoefficientSet(p, {});
}

} // namespace

TEST_CASE("free spectrum is the half line with touching bands") {
    const double lambda_max = std::pow(3.2 * M_PI, 4);
    const SpectrumReport rep = assemble(free_set(), lambda_max);

    REQUIRE(rep.bands.size() >= 3);
    for (std::size_t i = 0; i < rep.bands.size(); ++i) {
        const Band& b = rep.bands[i];
        CHECK(b.case_tag == BandCase::i1);
        CHECK_FALSE(b.double_resonance_flag);
        CHECK(b.n == static_cast<int>(i) + 1);
        const double lo = std::pow(M_PI * i, 4);
        const double hi = std::pow(M_PI * (i + 1), 4);
        CHECK(std::abs(b.closure.a - lo) < 1e-6 * hi);
        CHECK(std::abs(b.closure.b - hi) < 1e-6 * hi);
    }
    // consecutive bands touch: no open gaps, no multiplicity-4 overlap
    CHECK(rep.gaps.empty());
    CHECK(rep.mult4.empty());

    // endpoint kinds alternate between the two boundary problems
    CHECK(rep.bands[0].left_kind == EndpointKind::periodic);
    CHECK(rep.bands[0].right_kind == EndpointKind::antiperiodic);
    CHECK(rep.bands[1].right_kind == EndpointKind::periodic);
}

TEST_CASE("weakly coupled profile opens a resonance-led first band") {
    const CoefficientSet c = sin_set(0.3);
    const double lambda_max = std::pow(1.4 * M_PI, 4);
    const SpectrumReport rep = assemble(c, lambda_max);

    REQUIRE_FALSE(rep.bands.empty());
    const Band& b1 = rep.bands[0];
    CHECK(b1.n == 1);
    CHECK(b1.case_tag == BandCase::i2);
    CHECK(b1.left_kind == EndpointKind::resonance);
    REQUIRE(b1.sub_arc_minus.has_value());
    REQUIRE(b1.sub_arc_plus.has_value());
    // the two sub-arcs share the resonance endpoint and overlap beyond it
    CHECK(b1.sub_arc_minus->a == doctest::Approx(b1.closure.a));
    CHECK(b1.sub_arc_plus->a == doctest::Approx(b1.closure.a));
    CHECK(b1.sub_arc_minus->b < b1.sub_arc_plus->b);

    // the overlap interval carries multiplicity 4
    REQUIRE_FALSE(rep.mult4.empty());
    const double mid = (b1.sub_arc_minus->a + b1.sub_arc_minus->b) / 2.0;
    bool covered = false;
    for (const auto& iv : rep.mult4)
        if (iv.contains(mid)) covered = true;
    CHECK(covered);
}

TEST_CASE("classification of the lowest perturbed resonance") {
    const CoefficientSet c = sin_set(0.3);
    const LabeledZeros lr = enumerate_zeros(TargetFunction::rho, c, 1);
    const LocatedZero* r0 = nullptr;
    for (const auto& z : lr.zeros)
        if (z.label && z.label->n == 0 && z.label->sign == -1) r0 = &z;
    REQUIRE(r0 != nullptr);
    const ResonanceClassification cls = classify_resonance(c, *r0);
    CHECK(cls.m == 1);
    CHECK(cls.side == 'a');
    CHECK(cls.delta_at_r > -1.0);
    CHECK(cls.delta_at_r < 1.0);
}

TEST_CASE("classification preconditions") {
    const CoefficientSet c = sin_set(0.3);
    LocatedZero wrong;
    wrong.which = TargetFunction::Dplus;
    wrong.lambda = C(0.0, 0.0);
    CHECK_THROWS_AS(classify_resonance(c, wrong), PreconditionError);

    LocatedZero complex_zero;
    complex_zero.which = TargetFunction::rho;
    complex_zero.lambda = C(-100.0, 5.0);
    CHECK_THROWS_AS(classify_resonance(c, complex_zero), PreconditionError);

    // free double resonance: the branch value sits outside (-1, 1)
    const CoefficientSet f = free_set();
    const LocatedZero far_res =
        refine_zero(TargetFunction::rho, C(-380.0, 0.0), f);
    CHECK_THROWS_AS(classify_resonance(f, far_res), PreconditionError);
}

TEST_CASE("assemble rejects windows beyond the table range") {
    CHECK_THROWS_AS(assemble(free_set(), std::pow(8.0 * M_PI, 4)),
                    PreconditionError);
}

TEST_CASE("report carries the provenance fields") {
    const SpectrumReport rep = assemble(sin_set(0.3), std::pow(M_PI, 4));
    CHECK_FALSE(rep.coeff_hash.empty());
    CHECK(rep.lambda_max == doctest::Approx(std::pow(M_PI, 4)));
    CHECK(rep.tol_root == doctest::Approx(1e-11));
}
