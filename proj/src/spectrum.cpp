#include "fourband/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "fourband/io.hpp"
#include "fourband/monodromy.hpp"

namespace fourband {

namespace {

using C = std::complex<double>;

double lam_of_s(double s) { return s * std::abs(s) * s * s; }
double s_of_lam(double lam) {
    return (lam < 0 ? -1.0 : 1.0) * std::pow(std::abs(lam), 0.25);
}

int indicator_at(const CoefficientSet& c, double lam) {
    return spectral_indicator(bundle(c, SpectralPoint(C(lam, 0.0))));
}

// Bisects the s-location where the indicator first changes from the
// value at s_a, assuming indicator(s_a) != indicator(s_b).
double refine_transition(const CoefficientSet& c, double s_a, double s_b,
                         int v_a) {
    for (int it = 0; it < 48 && std::abs(s_b - s_a) >
                                    1e-10 * (1.0 + std::abs(s_a));
         ++it) {
        const double m = (s_a + s_b) / 2.0;
        if (indicator_at(c, lam_of_s(m)) == v_a)
            s_a = m;
        else
            s_b = m;
    }
    return lam_of_s((s_a + s_b) / 2.0);
}

struct EigenLookup {
    const ZeroTables& t;

    const LocatedZero* find(int n, int sign) const {
        const auto& table =
            (n % 2 == 1) ? t.antiperiodic : t.periodic;
        for (const auto& z : table)
            if (z.label && z.label->n == n && z.label->sign == sign) return &z;
        return nullptr;
    }
};

bool matches(double lam, double table_lam) {
    return std::abs(lam - table_lam) <= 1e-7 * std::max(1.0, std::abs(lam));
}

} // namespace

SpectrumReport assemble(const CoefficientSet& c, double lambda_max,
                        double tol_root) {
    if (std::pow(lambda_max, 0.25) > 6.0 * M_PI - 0.01)
        throw PreconditionError("assemble: lambda_max beyond the supported "
                                "table range");
    SpectrumReport rep;
    rep.lambda_max = lambda_max;
    rep.coeff_hash = coefficient_hash(c);
    rep.tol_ode = 1e-12;
    rep.tol_root = tol_root;

    const double smax = std::pow(std::max(lambda_max, 16.0), 0.25);
    const int Nplus =
        std::max(1, static_cast<int>(std::ceil(smax / (2.0 * M_PI) - 0.5)));
    const int Nminus =
        std::max(1, static_cast<int>(std::floor(smax / (2.0 * M_PI))) + 1);

    ZeroTables& tables = rep.tables;
    {
        auto lz = enumerate_zeros(TargetFunction::Dplus, c, Nplus, tol_root);
        tables.periodic = std::move(lz.zeros);
        tables.unlabeled.insert(tables.unlabeled.end(), lz.unlabeled.begin(),
                                lz.unlabeled.end());
    }
    {
        auto lz = enumerate_zeros(TargetFunction::Dminus, c, Nminus, tol_root);
        tables.antiperiodic = std::move(lz.zeros);
        tables.unlabeled.insert(tables.unlabeled.end(), lz.unlabeled.begin(),
                                lz.unlabeled.end());
    }
    {
        const int Nrho = std::max(
            1, static_cast<int>(std::floor(smax / (M_PI * std::sqrt(2.0)))) +
                   1);
        auto lz = enumerate_zeros(TargetFunction::rho, c, Nrho, tol_root);
        tables.resonances = std::move(lz.zeros);
        tables.unlabeled.insert(tables.unlabeled.end(), lz.unlabeled.begin(),
                                lz.unlabeled.end());
    }

    std::vector<double> real_resonances;
    for (const auto& z : tables.resonances)
        if (z.lambda.imag() == 0.0) real_resonances.push_back(z.lambda.real());
    std::sort(real_resonances.begin(), real_resonances.end());

    // scan window: a little below the lowest candidate left endpoint
    double lo_candidate = 0.0;
    if (const LocatedZero* l0 = EigenLookup{tables}.find(0, +1))
        lo_candidate = l0->lambda.real();
    if (!real_resonances.empty())
        lo_candidate = std::min(lo_candidate, real_resonances.front());
    const double s_lo = s_of_lam(lo_candidate) - 0.5;
    const double s_hi = s_of_lam(lambda_max);

    // indicator scan, 40 samples per unit of s
    const double step = 1.0 / 40.0;
    std::vector<double> sgrid;
    std::vector<int> ind;
    for (double s = s_lo; s <= s_hi + step / 2; s += step) {
        sgrid.push_back(std::min(s, s_hi));
        ind.push_back(indicator_at(c, lam_of_s(sgrid.back())));
    }

    // maximal intervals of constant "spectral" state, refined at changes
    auto collect = [&](auto pred) {
        std::vector<Interval> out;
        std::size_t i = 0;
        while (i < sgrid.size()) {
            if (!pred(ind[i])) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < sgrid.size() && pred(ind[j + 1])) ++j;
            double a = lam_of_s(sgrid[i]);
            double b = lam_of_s(sgrid[j]);
            if (i > 0)
                a = refine_transition(c, sgrid[i], sgrid[i - 1], ind[i]);
            if (j + 1 < sgrid.size())
                b = refine_transition(c, sgrid[j], sgrid[j + 1], ind[j]);
            out.push_back({a, b});
            i = j + 1;
        }
        return out;
    };
    const std::vector<Interval> spectral =
        collect([](int v) { return v >= 2; });
    rep.mult4 = collect([](int v) { return v == 4; });
    {
        auto zero_iv = collect([](int v) { return v == 0; });
        // gaps are the zero-indicator intervals strictly between spectrum
        for (const auto& iv : zero_iv) {
            const bool below_all =
                spectral.empty() || iv.b <= spectral.front().a;
            const bool above_all =
                spectral.empty() || iv.a >= spectral.back().b;
            if (!below_all && !above_all) rep.gaps.push_back(iv);
        }
    }

    // band construction from the labeled tables
    const EigenLookup look{tables};
    for (int n = 1;; ++n) {
        const LocatedZero* left = look.find(n - 1, +1);
        const LocatedZero* right = look.find(n, -1);
        if (!left || !right) break;
        const double a = left->lambda.real();
        const double b = right->lambda.real();
        if (std::min(a, b) > lambda_max) break;

        Band band;
        band.n = n;
        band.case_tag = BandCase::i1;
        band.closure = {std::min(a, b), std::max(a, b)};
        band.left_kind = (n - 1) % 2 == 1 ? EndpointKind::antiperiodic
                                          : EndpointKind::periodic;
        band.right_kind = n % 2 == 1 ? EndpointKind::antiperiodic
                                     : EndpointKind::periodic;

        // i2: a resonance strictly below both endpoints whose midpoint
        // towards them carries multiplicity 4
        const double mn = std::min(a, b), mx = std::max(a, b);
        bool is_i2 = false, is_i3 = false;
        double res_left = 0.0, res_right = 0.0;
        for (auto it = real_resonances.rbegin(); it != real_resonances.rend();
             ++it)
            if (*it < mn && !matches(*it, mn)) {
                if (indicator_at(c, (*it + mn) / 2.0) == 4) {
                    is_i2 = true;
                    res_left = *it;
                }
                break;
            }
        for (double r : real_resonances)
            if (r > mx && !matches(r, mx)) {
                if (indicator_at(c, (mx + r) / 2.0) == 4) {
                    is_i3 = true;
                    res_right = r;
                }
                break;
            }
        if (is_i2) {
            band.case_tag = BandCase::i2;
            band.left_kind = EndpointKind::resonance;
            band.closure.a = res_left;
            band.sub_arc_minus = Interval{res_left, a};
            band.sub_arc_plus = Interval{res_left, b};
            rep.mult4.push_back({res_left, mn});
        }
        if (is_i3) {
            band.case_tag = BandCase::i3;
            band.right_kind = EndpointKind::resonance;
            band.closure.b = res_right;
            band.sub_arc_minus = Interval{a, res_right};
            band.sub_arc_plus = Interval{b, res_right};
            rep.mult4.push_back({mx, res_right});
        }
        band.double_resonance_flag = is_i2 && is_i3;
        rep.bands.push_back(band);
        if (std::max(a, b) > lambda_max) break;
    }

    // merge/normalize the multiplicity-4 intervals
    std::sort(rep.mult4.begin(), rep.mult4.end(),
              [](const Interval& u, const Interval& v) { return u.a < v.a; });
    std::vector<Interval> merged;
    for (const auto& iv : rep.mult4) {
        if (!merged.empty() && iv.a <= merged.back().b + 1e-12)
            merged.back().b = std::max(merged.back().b, iv.b);
        else
            merged.push_back(iv);
    }
    rep.mult4 = std::move(merged);
    return rep;
}

ResonanceClassification classify_resonance(const CoefficientSet& c,
                                           const LocatedZero& r) {
    if (r.which != TargetFunction::rho)
        throw PreconditionError("classify_resonance expects a zero of rho");
    if (r.lambda.imag() != 0.0)
        throw PreconditionError("classify_resonance expects a real resonance");
    const double lam = r.lambda.real();
    const auto bd = bundle_with_derivative(c, SpectralPoint(C(lam, 0.0)));
    const double delta = bd.b.T1.real();
    if (!(delta > -1.0 && delta < 1.0))
        throw PreconditionError(
            "classify_resonance requires Delta(r) inside (-1, 1)");
    if (r.multiplicity > 2)
        throw NumericalError("real resonance with multiplicity > 2 despite "
                             "Delta(r) in (-1, 1): numerical contradiction");

    ResonanceClassification out;
    out.m = r.multiplicity;
    out.delta_at_r = delta;
    out.side = '-';
    out.rho_second = 0.0;
    if (r.multiplicity == 1) {
        const double dr = bd.d.drho.real();
        if (dr == 0.0)
            throw NumericalError("vanishing rho' at a simple resonance");
        out.side = dr > 0.0 ? 'a' : 'b';
    } else {
        const double h = 1e-5 * std::max(1.0, std::abs(lam));
        const double dp =
            bundle_with_derivative(c, SpectralPoint(C(lam + h, 0.0)))
                .d.drho.real();
        const double dm =
            bundle_with_derivative(c, SpectralPoint(C(lam - h, 0.0)))
                .d.drho.real();
        out.rho_second = (dp - dm) / (2.0 * h);
        if (!(out.rho_second > 0.0))
            throw NumericalError(
                "double resonance with rho'' <= 0: numerical contradiction");
    }
    return out;
}

} // namespace fourband
