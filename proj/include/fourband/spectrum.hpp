#ifndef FOURBAND_SPECTRUM_HPP
#define FOURBAND_SPECTRUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "fourband/coeffs.hpp"
#include "fourband/zeros.hpp"

namespace fourband {

struct Interval {
    double a;
    double b;
    bool contains(double t) const { return a <= t && t <= b; }
};

enum class BandCase { i1, i2, i3 };
enum class EndpointKind { periodic, antiperiodic, resonance };

/// One spectral band sigma_n. Case i1: closure of (lambda_{n-1}^+,
/// lambda_n^-) with one real-analytic branch across it. Case i2 (i3):
/// a resonance endpoint on the left (right) with two branch sub-arcs
/// sigma_n^-+ whose overlap carries multiplicity 4.
struct Band {
    int n;
    Interval closure;
    BandCase case_tag;
    EndpointKind left_kind, right_kind;
    std::optional<Interval> sub_arc_minus, sub_arc_plus;
    /// Set when both i2 and i3 patterns are detected for the same n;
    /// reported verbatim rather than forced into the trichotomy.
    bool double_resonance_flag = false;
};

struct SpectrumReport {
    std::vector<Band> bands;
    std::vector<Interval> gaps;
    std::vector<Interval> mult4;  ///< the multiplicity-4 set, as intervals
    ZeroTables tables;
    double lambda_max;
    std::string coeff_hash;
    double tol_ode, tol_root;
};

/// Assembles bands, gaps, and the multiplicity-4 set on
/// [lambda_min_auto, lambda_max] from the labeled zero tables plus a
/// real-axis indicator scan (40 samples per unit of the quarter-root
/// variable, bisection refinement at transitions).
SpectrumReport assemble(const CoefficientSet& c, double lambda_max,
                        double tol_root = 1e-11);

struct ResonanceClassification {
    int m;              // 1 or 2
    char side;          // for m = 1: 'a' branches open rightward, 'b' leftward
    double delta_at_r;  // common branch value T1(r)
    double rho_second;  // for m = 2: the (positive) second derivative
};

/// Local analysis of a real resonance r with Delta(r) in (-1, 1):
/// multiplicity at most 2; for m = 1 the sign of rho'(r) fixes the side
/// the branches open to; for m = 2 asserts rho''(r) > 0.
/// Multiplicity > 2 raises NumericalError (structural contradiction).
ResonanceClassification classify_resonance(const CoefficientSet& c,
                                           const LocatedZero& r);

} // namespace fourband

#endif
