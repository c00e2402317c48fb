#ifndef FOURBAND_ZEROS_HPP
#define FOURBAND_ZEROS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fourband/coeffs.hpp"
#include "fourband/discriminants.hpp"

namespace fourband {

enum class TargetFunction { rho, Dplus, Dminus };

std::string to_string(TargetFunction f);

/// A closed contour along which zeros are counted.
///   disk_in_lambda : lambda(theta) = center + radius e^{i theta}
///   disk_in_z      : lambda(theta) = (center + radius e^{i theta})^4,
///                    center/radius given in the quarter-root variable;
///                    the image is the full lambda-neighborhood, covering
///                    both conjugate preimage sheets near arg z = pi/4
///   rect_in_z      : axis-aligned rectangle in z, corners
///                    (center - half_size) .. (center + half_size)
struct ContourSpec {
    enum class Kind { disk_in_lambda, disk_in_z, rect_in_z };
    Kind kind;
    std::complex<double> center;
    double radius = 0.0;                  // disks
    std::complex<double> half_size{0, 0}; // rect half-widths (re, im)
    int node_count = 256;
};

struct ZeroLabel {
    int n;
    int sign;  // -1 or +1
};

struct LocatedZero {
    std::complex<double> lambda;
    int multiplicity = 1;
    TargetFunction which = TargetFunction::rho;
    std::optional<ZeroLabel> label;
    double refine_residual = 0.0;
};

/// Winding number of the target function along the contour, i.e. the
/// number of zeros enclosed (with multiplicity). Node count doubles up
/// to three times when the phase increments are ambiguous or the winding
/// is not close to an integer; failure to settle raises NumericalError
/// (contour passes too close to a zero).
int count_zeros(TargetFunction f, const ContourSpec& contour,
                const CoefficientSet& c);

/// Newton refinement from a seed, with the derivative assembled from the
/// variational dM/dlambda. Multiplicity is the winding number on a circle
/// of radius 1e-3 max(1, |lambda|) around the converged point; double
/// zeros are polished on the derivative for full accuracy.
LocatedZero refine_zero(TargetFunction f, std::complex<double> seed,
                        const CoefficientSet& c, double tol_root = 1e-11);

struct LabeledZeros {
    std::vector<LocatedZero> zeros;
    std::vector<LocatedZero> unlabeled;
};

/// Single-function enumeration: zeros of the target inside its counting
/// domain at index N (D+ : {|lambda|^{1/4} < 2 pi (N + 1/2)},
/// D- : {|lambda|^{1/4} < 2 pi N}, rho : {|lambda| < 4 (pi (N + 1/2))^4}),
/// labeled by the interlacing or resonance-ordering rules.
LabeledZeros enumerate_zeros(TargetFunction f, const CoefficientSet& c, int N,
                             double tol_root = 1e-11);

struct ZeroTables {
    std::vector<LocatedZero> periodic;      ///< zeros of D+ with labels (n, +-)
    std::vector<LocatedZero> antiperiodic;  ///< zeros of D- with labels
    std::vector<LocatedZero> resonances;    ///< zeros of rho with labels
    /// Zeros the labeling rules could not place (reported, never dropped).
    std::vector<LocatedZero> unlabeled;
};

/// Finds all zeros of D+ in {|lambda|^{1/4} < 2 pi (N + 1/2)}, of D- in
/// {|lambda|^{1/4} < 2 pi N}, and of rho in {|lambda| < 4 (pi (N + 1/2))^4},
/// using per-cluster contours validated against the enclosing count, then
/// assigns the interlacing labels lambda_n^-+ and the resonance ordering
/// (r_0^- the maximal real zero; decreasing real part; conjugate pairs
/// split lower/upper half-plane; real pairs ordered r_n^- <= r_n^+).
ZeroTables enumerate_and_label(const CoefficientSet& c, int N,
                               double tol_root = 1e-11);

/// All real zeros of the target in [lo, hi], by scanning in
/// s = sign(lambda) |lambda|^{1/4} with step pi/40 and bisecting sign
/// changes. Even-multiplicity zeros without a sign change are recovered
/// by the callers' contour counts, not here.
std::vector<double> real_zero_scan(TargetFunction f, const CoefficientSet& c,
                                   double lo, double hi);

} // namespace fourband

#endif
