#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unimap/map.hpp"

namespace unimap {

/// Top-degree data of a polynomial map: per-component total degree (-1 for
/// a zero component), the leading form of each component, and the forms of
/// degree d = max d_i (zero when d_i < d).
struct LeadingFormSet {
    int n = 0;
    std::vector<int> degrees;
    int algebraic_degree = -1;
    std::vector<Poly> leading;
    std::vector<Poly> degree_d_forms;
};

LeadingFormSet leading_forms(const PolyMap& f);

/// Signed remainder sequence p, p', -rem(...), ...; ends at (a multiple of)
/// the gcd of p and p'.
struct SturmChain {
    std::vector<Poly> sequence;
};

SturmChain sturm_chain(const Poly& p);

// Number of distinct real roots in the open interval (lo, hi); an absent
// bound means -/+ infinity. Endpoint roots are excluded.
int sturm_count(const Poly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi);
int sturm_count_all(const Poly& p);

/// Either an exact rational root or an isolating interval (exact sign
/// change, width <= 1e-9) around an irrational one.
struct RealRoot {
    std::optional<Rational> exact;
    Rational lo, hi;
    double approx = 0;
};

std::vector<RealRoot> isolate_real_roots(const Poly& p);

enum class ZeroVerdict { ProvenHolds, ProvenFails, ProbablyHolds, NumericFails, Undetermined };
std::string to_string(ZeroVerdict v);

struct DirectionCertificate {
    ZeroVerdict verdict = ZeroVerdict::Undetermined;
    bool exact = false;
    // ProvenFails: a common zero direction; exact rationals when available,
    // else the float witness from the numeric search.
    std::optional<RatVec> direction;
    std::optional<std::vector<double>> float_direction;
    std::string detail;
};

// Randall's condition for n = 2, decided exactly: do the two leading forms
// share a nontrivial real zero? Dehomogenize at y = 1 (gcd + Sturm), and
// separately test the direction (1, 0).
DirectionCertificate randall_condition_n2(const PolyMap& f);

// Same machinery on the degree-d forms (zero forms constrain nothing).
// Exact for n = 2 and for d <= 1 in any dimension; for n >= 3 and d > 1 a
// numeric sphere search (50 restarts) gives a labeled heuristic verdict.
DirectionCertificate no_zeros_at_infinity(const PolyMap& f);

struct NewtonReport {
    int starts = 0;
    int converged = 0;
    std::vector<std::vector<double>> distinct_roots; // separation > 1e-6
    double best_residual = 0;
};

// Multi-start damped Newton for g(x) = 0.
NewtonReport newton_roots(const std::function<std::vector<double>(const std::vector<double>&)>& g,
                          const std::function<std::vector<double>(const std::vector<double>&)>& jacobian_flat,
                          int dim, int starts, double box_lo, double box_hi, double tol,
                          double distinct_tol, std::uint64_t seed);

struct UniqueFixedPointCertificate {
    bool certified = false;
    bool heuristic = false; // n >= 3 zero checks are numeric
    std::string route;      // which theorem branch applied
    std::string failing_hypothesis;
    NewtonReport newton;    // corroboration on success
};

// Fixed-point uniqueness via the two leading-form theorems. Hypothesis (i)
// is decided exactly as "det(J(f) - I) is a nonzero constant" (a nilpotent
// J(f) yields the constant (-1)^n automatically); nonconstant nonvanishing
// determinants are NotApplicable rather than decided. Hypothesis (ii) is
// the d = 0 / d = 1 branch, or degree > 1 leading forms without common
// zero, or no zeros at infinity.
UniqueFixedPointCertificate unique_fixed_point_via_randall(const PolyMap& f, std::uint64_t seed = 42);

struct DiffeoCertificate {
    bool certified = false;
    bool heuristic = false;
    std::string reason;
};

// Proper-map certificate for g itself: the Jacobian determinant is
// certified nowhere-vanishing (nonzero constant, or constant plus
// same-signed all-even monomials), and the leading forms share no
// nontrivial zero. Certifies that g is a diffeomorphism of R^n, so
// g(x) = a has exactly one solution for every a.
DiffeoCertificate randall_diffeo_certificate(const PolyMap& g);

struct BoundedImageReport {
    std::vector<std::vector<double>> fixed_points; // distinct, separation 1e-6
    int starts = 0;
    int converged = 0;
};

// Numeric survey for maps with bounded range: multi-start Newton on
// x - f(x) over a box covering the range; reports the set of distinct
// fixed points found.
BoundedImageReport bounded_image_unique_fixed_point_demo(const ExprMap& f, double box_lo = -10.0,
                                                         double box_hi = 10.0, int starts = 100,
                                                         std::uint64_t seed = 42);

} // namespace unimap
