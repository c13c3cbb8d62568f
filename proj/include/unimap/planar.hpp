#pragma once

#include <optional>
#include <string>

#include "unimap/map.hpp"

namespace unimap {

/// Data of the planar unipotent normal form
///   f(x,y) = (x + b*phi(a*x + b*y) + c, y - a*phi(a*x + b*y) + d).
/// Normalization: phi(0) = 0 with constants absorbed into c,d; (a,b) are
/// coprime integers with the first nonzero one positive; (a,b) = (0,0) only
/// for constant perturbations.
struct PlanarNormalForm {
    Rational a, b, c, d;
    Expr phi; // univariate, variable 0 = t
};

ExprMap make_planar(const PlanarNormalForm& nf);
// Exact variant for polynomial phi.
PolyMap make_planar_poly(const PlanarNormalForm& nf);

struct PlanarExtraction {
    bool ok = false;
    PlanarNormalForm form;
    std::string failure; // NotPlanarNormalizable certificate text
};

// Converse of the planar theorem for polynomial maps: recovers (a,b,c,d,phi)
// from a planar map whose J(f) is provably unipotent, and verifies the
// reconstruction reproduces f exactly. Requires is_unipotent(f) to be
// ProvenNilpotent (checked; PreconditionError otherwise).
PlanarExtraction extract_normal_form(const PolyMap& f);

// Exact identity a*h1 + b*h2 = 0 for h = f - id - h(0), with (a,b) from a
// successful extraction.
bool planar_invariant_check(const PolyMap& f, const Rational& a, const Rational& b);

} // namespace unimap
