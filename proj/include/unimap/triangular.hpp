#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimap/jacobian.hpp"
#include "unimap/map.hpp"
#include "unimap/ratmatrix.hpp"

namespace unimap {

/// Finite generating set for the pointwise family {J(h)(x) : x in R^n}: the
/// distinct monomial coefficient matrices C_k of J(h)(x) = sum_k m_k(x) C_k.
/// Every pointwise evaluation lies in the generators' linear span, so
/// simultaneous strict-upper-triangularity of the span reduces to that of
/// the generators.
struct MatrixFamily {
    int n = 0;
    std::vector<RatMatrix> generators; // empty <=> explicitly the zero family
};

MatrixFamily coefficient_family(const PolyMap& h);

struct StrongNilpotenceCertificate {
    bool strongly_nilpotent = false;
    // On failure: a nonzero entry of the generic product and a rational
    // assignment of the n point blocks witnessing it.
    std::optional<Poly> nonzero_entry;
    std::optional<std::vector<RatVec>> witness_points;
    std::string detail;
};

// Forms the n-fold product J(h)(a_1) ... J(h)(a_n) with n fresh variable
// blocks (a polynomial matrix in n^2 variables) and tests it for identical
// vanishing. Throws ResourceLimit when intermediate term counts exceed the
// polynomial term cap.
StrongNilpotenceCertificate strongly_nilpotent_generic(const PolyMap& h);

enum class SampledStrength { ProbablyStronglyNilpotent, NotStronglyNilpotent, Inconclusive };

struct SampledStrongNilpotence {
    SampledStrength status = SampledStrength::Inconclusive;
    int tuples = 0;
    double tol = 0;
    std::optional<std::vector<std::vector<double>>> witness_tuple;
    double max_abs_entry = 0;
};

// Schwartz-Zippel style surrogate: random n-tuples of points, float Jacobian
// products compared to zero within tol.
SampledStrongNilpotence strongly_nilpotent_sampled(const ExprMap& m, int tuples = 200,
                                                   double tol = 1e-8, double box_lo = -2.0,
                                                   double box_hi = 2.0, std::uint64_t seed = 42);

/// Invertible S whose columns are a flag basis: S^-1 G S is strictly upper
/// triangular for every generator G (verified exactly before returning).
struct TriangularizingBasis {
    RatMatrix S;
    RatMatrix S_inv;
};

// Constructive induction from the common-kernel lemma: pick a vector
// annihilated by the whole family, quotient, recurse. Throws
// NotStronglyNilpotent when the common kernel vanishes at some stage.
TriangularizingBasis triangularize_family(const MatrixFamily& F);

struct TriangularizedMap {
    RatMatrix S;
    RatMatrix S_inv;
    PolyMap triangular_form; // S^-1 o f o S, verified unit upper triangular
};

// f = id + h polynomial; S from the coefficient family of h. The returned
// form satisfies: component i minus x_i depends only on x_j with j > i.
TriangularizedMap triangularize_map(const PolyMap& f);

// Translation-dilation tau(x) = a + lambda*x.
struct TranslationDilation {
    RatVec offset;
    Rational scale;
};

// Symbolically composes h o tau_1 o h o tau_2 o ... o h o tau_n and reports
// whether every component is constant.
bool composition_product_constant(const PolyMap& h, const std::vector<TranslationDilation>& dilations);

} // namespace unimap
