#include "fourband/zeros.hpp"

#include <algorithm>
#include <cmath>

#include "fourband/monodromy.hpp"

namespace fourband {

namespace {

using C = std::complex<double>;

C pick(const DiscriminantBundle& b, TargetFunction f) {
    switch (f) {
        case TargetFunction::rho: return b.rho;
        case TargetFunction::Dplus: return b.Dplus;
        default: return b.Dminus;
    }
}

C pick_d(const BundleDerivatives& d, TargetFunction f) {
    switch (f) {
        case TargetFunction::rho: return d.drho;
        case TargetFunction::Dplus: return d.dDplus;
        default: return d.dDminus;
    }
}

C eval_f(TargetFunction f, const CoefficientSet& c, C lambda) {
    return pick(bundle(c, SpectralPoint(lambda)), f);
}

std::pair<C, C> eval_fd(TargetFunction f, const CoefficientSet& c, C lambda) {
    const auto bd = bundle_with_derivative(c, SpectralPoint(lambda));
    return {pick(bd.b, f), pick_d(bd.d, f)};
}

C contour_lambda(const ContourSpec& s, double frac) {
    switch (s.kind) {
        case ContourSpec::Kind::disk_in_lambda:
            return s.center + s.radius * std::polar(1.0, 2.0 * M_PI * frac);
        case ContourSpec::Kind::disk_in_z: {
            const C z = s.center + s.radius * std::polar(1.0, 2.0 * M_PI * frac);
            return z * z * z * z;
        }
        default: {
            // rectangle perimeter in z, counterclockwise from the
            // bottom-left corner
            const double hw = s.half_size.real(), hh = s.half_size.imag();
            const double u = 4.0 * frac;
            C z;
            if (u < 1.0)
                z = s.center + C(-hw + 2.0 * hw * u, -hh);
            else if (u < 2.0)
                z = s.center + C(hw, -hh + 2.0 * hh * (u - 1.0));
            else if (u < 3.0)
                z = s.center + C(hw - 2.0 * hw * (u - 2.0), hh);
            else
                z = s.center + C(-hw, hh - 2.0 * hh * (u - 3.0));
            return z * z * z * z;
        }
    }
}

} // namespace

std::string to_string(TargetFunction f) {
    switch (f) {
        case TargetFunction::rho: return "rho";
        case TargetFunction::Dplus: return "Dplus";
        default: return "Dminus";
    }
}

int count_zeros(TargetFunction f, const ContourSpec& contour,
                const CoefficientSet& c) {
    int nodes = std::max(16, contour.node_count);
    for (int attempt = 0; attempt <= 3; ++attempt, nodes = std::min(2 * nodes, 2048)) {
        std::vector<C> vals(nodes);
        double maxabs = 0.0, minabs = 1e300;
        for (int k = 0; k < nodes; ++k) {
            vals[k] = eval_f(f, c, contour_lambda(contour, double(k) / nodes));
            maxabs = std::max(maxabs, std::abs(vals[k]));
            minabs = std::min(minabs, std::abs(vals[k]));
        }
        if (minabs < 1e-12 * std::max(1.0, maxabs)) continue;  // too close
        double total = 0.0;
        bool ambiguous = false;
        for (int k = 0; k < nodes; ++k) {
            const double d = std::arg(vals[(k + 1) % nodes] / vals[k]);
            if (std::abs(d) > 1.8) {
                ambiguous = true;
                break;
            }
            total += d;
        }
        if (ambiguous) continue;
        const double w = total / (2.0 * M_PI);
        if (std::abs(w - std::round(w)) < 0.1)
            return static_cast<int>(std::lround(w));
    }
    throw NumericalError("winding number failed to settle (contour too close "
                         "to a zero of " + to_string(f) + ")");
}

namespace {

// Plain Newton iteration; returns the converged point or throws.
C newton(TargetFunction f, const CoefficientSet& c, C seed, double tol_root,
         const C* deflate = nullptr) {
    C lam = seed;
    const double escape = 10.0 * (std::abs(seed) + 1.0) + 1e6;
    double last_step = 1e300;
    for (int it = 0; it < 80; ++it) {
        const auto [fv, dv] = eval_fd(f, c, lam);
        if (std::abs(fv) == 0.0) return lam;  // landed exactly on a zero
        C logderiv = dv / fv;
        if (deflate) logderiv -= 1.0 / (lam - *deflate);
        const C step = 1.0 / logderiv;
        lam -= step;
        last_step = std::abs(step);
        if (std::abs(lam) > escape)
            throw NumericalError("Newton refinement diverged from seed (" +
                                 std::to_string(seed.real()) + ", " +
                                 std::to_string(seed.imag()) + ")");
        if (std::abs(step) < tol_root * std::max(1.0, std::abs(lam))) {
            // one final correction
            const auto [fv2, dv2] = eval_fd(f, c, lam);
            if (std::abs(fv2) == 0.0) return lam;
            C ld = dv2 / fv2;
            if (deflate) ld -= 1.0 / (lam - *deflate);
            const C s2 = 1.0 / ld;
            if (std::abs(s2) < 10.0 * tol_root * std::max(1.0, std::abs(lam)))
                lam -= s2;
            return lam;
        }
    }
    // A multiple zero stalls the iteration at the noise floor well before
    // tol_root is met; hand the stalled point to the multiplicity stage.
    if (last_step < 2e-4 * std::max(1.0, std::abs(lam))) return lam;
    throw NumericalError("Newton refinement did not converge from seed (" +
                         std::to_string(seed.real()) + ", " +
                         std::to_string(seed.imag()) + ")");
}

// For a multiplicity-2 zero, plain Newton stalls at sqrt(noise) distance;
// polish on the derivative instead (its zero is simple and coincides with
// the double zero, or sits at the pseudo-double midpoint of a barely
// split pair, which the tie-breaking rule treats as coincident anyway).
C polish_double(TargetFunction f, const CoefficientSet& c, C lam0,
                double tol_root) {
    C lam = lam0;
    const double h0 = 1e-6 * std::max(1.0, std::abs(lam0));
    for (int it = 0; it < 40; ++it) {
        const auto [fv, dv] = eval_fd(f, c, lam);
        (void)fv;
        const C d2 = (eval_fd(f, c, lam + h0).second -
                      eval_fd(f, c, lam - h0).second) /
                     (2.0 * h0);
        if (std::abs(d2) == 0.0) break;
        const C step = dv / d2;
        lam -= step;
        if (std::abs(lam - lam0) > 1e-2 * std::max(1.0, std::abs(lam0)))
            return lam0;  // wandered off; keep the plain-Newton point
        if (std::abs(step) < tol_root * std::max(1.0, std::abs(lam))) break;
    }
    return lam;
}

int winding_multiplicity(TargetFunction f, const CoefficientSet& c, C lam,
                         double radius) {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::disk_in_lambda;
    spec.center = lam;
    spec.radius = radius;
    spec.node_count = 128;
    return count_zeros(f, spec, c);
}

} // namespace

LocatedZero refine_zero(TargetFunction f, std::complex<double> seed,
                        const CoefficientSet& c, double tol_root) {
    C lam = newton(f, c, seed, tol_root);
    // Zeros of real-coefficient problems on (numerically) the real axis
    // are snapped onto it.
    if (std::abs(lam.imag()) < 1e-9 * std::max(1.0, std::abs(lam)))
        lam = C(lam.real(), 0.0);

    double radius = 1e-3 * std::max(1.0, std::abs(lam));
    int mult = winding_multiplicity(f, c, lam, radius);
    if (mult == 0) {
        radius *= 4.0;
        mult = winding_multiplicity(f, c, lam, radius);
    }
    if (mult == 2) {
        lam = polish_double(f, c, lam, tol_root);
        if (std::abs(lam.imag()) < 1e-9 * std::max(1.0, std::abs(lam)))
            lam = C(lam.real(), 0.0);
    }
    if (mult < 1)
        throw NumericalError("refined zero of " + to_string(f) +
                             " lost by the multiplicity winding");

    LocatedZero out;
    out.lambda = lam;
    out.multiplicity = mult;
    out.which = f;
    out.refine_residual = std::abs(eval_f(f, c, lam));
    return out;
}

std::vector<double> real_zero_scan(TargetFunction f, const CoefficientSet& c,
                                   double lo, double hi) {
    auto s_of = [](double lam) {
        return (lam < 0 ? -1.0 : 1.0) * std::pow(std::abs(lam), 0.25);
    };
    auto lam_of = [](double s) { return s * std::abs(s) * s * s; };
    auto value = [&](double s) {
        return pick(bundle(c, SpectralPoint(C(lam_of(s), 0.0))), f).real();
    };
    const double step = M_PI / 40.0;
    const double slo = s_of(lo), shi = s_of(hi);
    std::vector<double> zeros;
    double sprev = slo, vprev = value(slo);
    for (double s = slo + step; s < shi + step / 2; s += step) {
        const double scur = std::min(s, shi);
        double vcur = value(scur);
        if (vprev == 0.0) zeros.push_back(lam_of(sprev));
        if (vprev * vcur < 0.0) {
            double a = sprev, b = scur, va = vprev;
            for (int it = 0; it < 80 && (b - a) > 1e-13 * (1.0 + std::abs(a));
                 ++it) {
                const double m = (a + b) / 2.0;
                const double vm = value(m);
                if (va * vm <= 0.0)
                    b = m;
                else {
                    a = m;
                    va = vm;
                }
            }
            zeros.push_back(lam_of((a + b) / 2.0));
        }
        sprev = scur;
        vprev = vcur;
    }
    return zeros;
}

namespace {

struct Cluster {
    ContourSpec spec;
    C seed;  // lambda-space starting point
};

// Locates all zeros inside one cluster contour, given its winding count.
std::vector<LocatedZero> resolve_cluster(TargetFunction f,
                                         const CoefficientSet& c,
                                         const Cluster& cl, int count,
                                         double tol_root) {
    std::vector<LocatedZero> out;
    if (count == 0) return out;
    LocatedZero first = refine_zero(f, cl.seed, c, tol_root);
    out.push_back(first);
    int found = first.multiplicity;
    if (found > count)
        throw NumericalError("cluster over-resolved: multiplicity exceeds "
                             "the contour count for " + to_string(f));
    while (found < count) {
        // deflate the zeros found so far (conjugate seeds first: complex
        // zeros of a real problem come in conjugate pairs)
        const C prev = out.back().lambda;
        C partner;
        bool ok = false;
        if (std::abs(prev.imag()) > 0.0) {
            try {
                partner = newton(f, c, std::conj(prev), tol_root);
                ok = std::abs(partner - prev) >
                     1e-6 * std::max(1.0, std::abs(prev));
            } catch (const NumericalError&) {
            }
        }
        if (!ok) {
            for (const C start :
                 {cl.seed, 2.0 * cl.seed - prev,
                  prev + C(0.05 * std::max(1.0, std::abs(prev)), 0.0),
                  prev - C(0.05 * std::max(1.0, std::abs(prev)), 0.0)}) {
                try {
                    partner = newton(f, c, start, tol_root, &prev);
                    if (std::abs(partner - prev) >
                        1e-7 * std::max(1.0, std::abs(prev))) {
                        ok = true;
                        break;
                    }
                } catch (const NumericalError&) {
                }
            }
        }
        if (!ok)
            throw NumericalError("failed to separate clustered zeros of " +
                                 to_string(f));
        LocatedZero second = refine_zero(f, partner, c, tol_root);
        found += second.multiplicity;
        out.push_back(second);
    }
    return out;
}

std::vector<LocatedZero> locate_all(TargetFunction f, const CoefficientSet& c,
                                    const ContourSpec& big,
                                    const std::vector<Cluster>& clusters,
                                    double tol_root) {
    const int total = count_zeros(f, big, c);
    std::vector<LocatedZero> zeros;
    int sum = 0;
    for (const auto& cl : clusters) {
        const int cnt = count_zeros(f, cl.spec, c);
        sum += cnt;
        auto part = resolve_cluster(f, c, cl, cnt, tol_root);
        zeros.insert(zeros.end(), part.begin(), part.end());
    }
    if (sum != total)
        throw NumericalError(
            "cluster decomposition lost zeros of " + to_string(f) + ": " +
            std::to_string(sum) + " vs " + std::to_string(total) +
            " in the enclosing contour");
    return zeros;
}

bool is_real_zero(const LocatedZero& z) { return z.lambda.imag() == 0.0; }

// Expands into unit-multiplicity entries for label assignment.
std::vector<LocatedZero> expand(const std::vector<LocatedZero>& zs) {
    std::vector<LocatedZero> out;
    for (const auto& z : zs)
        for (int i = 0; i < z.multiplicity; ++i) {
            LocatedZero copy = z;
            copy.multiplicity = 1;
            out.push_back(copy);
        }
    return out;
}

void label_eigenvalues(std::vector<LocatedZero>& zs, bool periodic,
                       std::vector<LocatedZero>& unlabeled) {
    // Real sorted order; D+ gets (0,+),(2,-),(2,+),(4,-),...;
    // D- gets (1,-),(1,+),(3,-),(3,+),...
    std::vector<LocatedZero> flat = expand(zs);
    std::stable_partition(flat.begin(), flat.end(), is_real_zero);
    auto split =
        std::find_if_not(flat.begin(), flat.end(), is_real_zero);
    for (auto it = split; it != flat.end(); ++it) unlabeled.push_back(*it);
    flat.erase(split, flat.end());
    std::sort(flat.begin(), flat.end(),
              [](const LocatedZero& a, const LocatedZero& b) {
                  return a.lambda.real() < b.lambda.real();
              });
    std::size_t i = 0;
    if (periodic && !flat.empty()) {
        flat[0].label = ZeroLabel{0, +1};
        i = 1;
    }
    int n = periodic ? 2 : 1;
    for (; i < flat.size(); i += 2, n += 2) {
        if (i + 1 < flat.size()) {
            flat[i].label = ZeroLabel{n, -1};
            flat[i + 1].label = ZeroLabel{n, +1};
        } else {
            unlabeled.push_back(flat[i]);  // odd tail: flagged, not guessed
        }
    }
    zs = flat;
}

void label_resonances(std::vector<LocatedZero>& zs,
                      std::vector<LocatedZero>& unlabeled) {
    std::vector<LocatedZero> flat = expand(zs);
    // sort by decreasing real part, lower half-plane first within a tie
    std::sort(flat.begin(), flat.end(),
              [](const LocatedZero& a, const LocatedZero& b) {
                  if (a.lambda.real() != b.lambda.real())
                      return a.lambda.real() > b.lambda.real();
                  return a.lambda.imag() < b.lambda.imag();
              });
    std::vector<LocatedZero> done;
    std::vector<bool> used(flat.size(), false);

    // r_0^-: the maximal real zero
    bool found0 = false;
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (is_real_zero(flat[i])) {
            flat[i].label = ZeroLabel{0, -1};
            used[i] = true;
            done.push_back(flat[i]);
            found0 = true;
            break;
        }
    if (!found0) {
        for (auto& z : flat) unlabeled.push_back(z);
        zs.clear();
        return;
    }

    int n = 1;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (used[i]) continue;
        if (flat[i].lambda.imag() > 0.0) continue;  // paired via conjugate
        // flat[i] is the next r_n^+ (max Re in the closed lower half-plane)
        used[i] = true;
        flat[i].label = ZeroLabel{n, +1};
        const C want = std::conj(flat[i].lambda);
        bool paired = false;
        if (flat[i].lambda.imag() < 0.0) {
            double best = 1e300;
            std::size_t bj = 0;
            for (std::size_t j = 0; j < flat.size(); ++j) {
                if (used[j] || flat[j].lambda.imag() <= 0.0) continue;
                const double d = std::abs(flat[j].lambda - want);
                if (d < best) {
                    best = d;
                    bj = j;
                }
            }
            if (best < 1e-8 * std::max(1.0, std::abs(want))) {
                used[bj] = true;
                flat[bj].label = ZeroLabel{n, -1};
                done.push_back(flat[bj]);
                paired = true;
            }
        } else {
            // real r_n^+: partner is the largest remaining real <= it
            for (std::size_t j = i + 1; j < flat.size(); ++j) {
                if (used[j] || !is_real_zero(flat[j])) continue;
                used[j] = true;
                flat[j].label = ZeroLabel{n, -1};
                done.push_back(flat[j]);
                paired = true;
                break;
            }
        }
        done.push_back(flat[i]);
        if (!paired) {
            unlabeled.push_back(flat[i]);
            done.back().label.reset();
        }
        ++n;
    }
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (!used[i]) unlabeled.push_back(flat[i]);
    zs = done;
}

} // namespace

namespace {

Cluster near_zero_cluster(double radius) {
    Cluster cl;
    cl.spec.kind = ContourSpec::Kind::disk_in_lambda;
    cl.spec.center = 0.0;
    cl.spec.radius = radius;
    cl.seed = 0.0;
    return cl;
}

Cluster z_cluster(C center, double radius) {
    Cluster cl;
    cl.spec.kind = ContourSpec::Kind::disk_in_z;
    cl.spec.center = center;
    cl.spec.radius = radius;
    cl.seed = center * center * center * center;
    return cl;
}

} // namespace

LabeledZeros enumerate_zeros(TargetFunction f, const CoefficientSet& c, int N,
                             double tol_root) {
    if (N < 1) throw PreconditionError("enumerate_zeros: N must be >= 1");
    ContourSpec big{ContourSpec::Kind::disk_in_lambda, 0.0, 0.0, C(0, 0), 512};
    std::vector<Cluster> cls;
    double xmax = 0.0;
    switch (f) {
        case TargetFunction::Dplus:
            big.radius = std::pow(2.0 * M_PI * (N + 0.5), 4);
            xmax = 2.0 * M_PI * (N + 0.5);
            cls.push_back(near_zero_cluster(100.0));
            for (int k = 1; k <= N; ++k)
                cls.push_back(z_cluster(C(2.0 * M_PI * k, 0.0), M_PI / 2.0));
            break;
        case TargetFunction::Dminus:
            big.radius = std::pow(2.0 * M_PI * N, 4);
            xmax = 2.0 * M_PI * N;
            for (int k = 1; k <= N; ++k)
                cls.push_back(
                    z_cluster(C(M_PI * (2.0 * k - 1.0), 0.0), M_PI / 2.0));
            break;
        case TargetFunction::rho:
            big.radius = 4.0 * std::pow(M_PI * (N + 0.5), 4);
            xmax = std::pow(big.radius, 0.25);
            cls.push_back(near_zero_cluster(100.0));
            for (int k = 1; k <= N; ++k)
                cls.push_back(z_cluster(C(M_PI * k, M_PI * k),
                                        M_PI / (2.0 * std::sqrt(2.0))));
            break;
    }
    if (xmax > kOverflowClampX)
        throw PreconditionError("enumerate_zeros: the contour for " +
                                to_string(f) + " at N = " + std::to_string(N) +
                                " exceeds the overflow clamp");
    LabeledZeros out;
    out.zeros = locate_all(f, c, big, cls, tol_root);
    if (f == TargetFunction::rho)
        label_resonances(out.zeros, out.unlabeled);
    else
        label_eigenvalues(out.zeros, f == TargetFunction::Dplus,
                          out.unlabeled);
    return out;
}

ZeroTables enumerate_and_label(const CoefficientSet& c, int N,
                               double tol_root) {
    ZeroTables out;
    auto take = [&out](LabeledZeros&& lz, std::vector<LocatedZero>& dst) {
        dst = std::move(lz.zeros);
        out.unlabeled.insert(out.unlabeled.end(), lz.unlabeled.begin(),
                             lz.unlabeled.end());
    };
    take(enumerate_zeros(TargetFunction::Dplus, c, N, tol_root), out.periodic);
    take(enumerate_zeros(TargetFunction::Dminus, c, N, tol_root),
         out.antiperiodic);
    take(enumerate_zeros(TargetFunction::rho, c, N, tol_root), out.resonances);
    return out;
}

} // namespace fourband
