#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimap/expr.hpp"
#include "unimap/poly.hpp"

namespace unimap {

/// n-tuple of expressions: the general C^1 representative. An optional phi
/// definition (univariate, variable 0 = t) applies to every component.
struct ExprMap {
    int dim = 0;
    std::vector<Expr> components;
    std::optional<Expr> phi;

    std::vector<double> eval(const std::vector<double>& p) const;
    RatVec eval(const RatVec& p) const;
};

/// n-tuple of canonical polynomials; the exact-arithmetic workhorse.
struct PolyMap {
    int dim = 0;
    std::vector<Poly> components;

    RatVec eval(const RatVec& p) const;
    std::vector<double> eval(const std::vector<double>& p) const;

    bool operator==(const PolyMap& o) const { return dim == o.dim && components == o.components; }
    bool is_constant() const;
};

ExprMap identity_expr_map(int n);
PolyMap identity_poly_map(int n);
PolyMap zero_poly_map(int n);

// f after g: substitutes g's components into f's variables. Attached phi
// definitions must agree when both maps carry one.
ExprMap compose(const ExprMap& f, const ExprMap& g);
PolyMap compose(const PolyMap& f, const PolyMap& g);

PolyMap compose_power(const PolyMap& h, int times);

PolyMap add(const PolyMap& a, const PolyMap& b);
PolyMap operator-(const PolyMap& a, const PolyMap& b);

// Perturbation part h = f - id.
ExprMap perturbation(const ExprMap& f);
PolyMap perturbation(const PolyMap& f);
// f = id + h.
PolyMap id_plus(const PolyMap& h);

// Exact conversion; throws NotPolynomial when a sin/cos/exp node occurs or
// phi has a non-polynomial definition.
PolyMap to_poly_map(const ExprMap& m);
ExprMap to_expr_map(const PolyMap& m);

// Component i = x_i + (sum_j A[i][j] x_j)^3.
PolyMap make_cubic_linear(const std::vector<RatVec>& A);

std::string render_map(const ExprMap& m);
std::string render_map(const PolyMap& m);

bool structurally_equal(const ExprMap& a, const ExprMap& b);

} // namespace unimap
