#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimap/map.hpp"
#include "unimap/ratmatrix.hpp"

namespace unimap {

/// Square matrix of expressions (symbolic Jacobians of C^1 maps).
struct ExprMatrix {
    int n = 0;
    std::vector<Expr> entries;
    std::optional<Expr> phi;

    const Expr& at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
    Expr& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

    std::vector<double> eval(const std::vector<double>& point) const; // row-major doubles
};

/// Square matrix of polynomials (exact path).
struct PolyMatrix {
    int n = 0;
    std::vector<Poly> entries;

    static PolyMatrix zero(int n, int nvars);
    static PolyMatrix identity(int n, int nvars);

    const Poly& at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
    Poly& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

    int nvars() const { return entries.empty() ? 0 : entries[0].nvars(); }
    bool is_zero() const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    Poly trace() const;
    RatMatrix eval(const RatVec& point) const;
    PolyMatrix leading_principal_submatrix(int k) const;
    // entrywise substitution
    PolyMatrix substitute(const std::vector<Poly>& args) const;

    bool operator==(const PolyMatrix& o) const { return n == o.n && entries == o.entries; }
};

ExprMatrix jacobian(const ExprMap& m);
PolyMatrix jacobian(const PolyMap& m);

// Coefficients (c_1 .. c_n) of the characteristic polynomial
// lambda^n + c_1 lambda^{n-1} + ... + c_n, each a polynomial in x, computed
// by Faddeev-LeVerrier over the rationals (division by integers is exact).
std::vector<Poly> char_poly_coeffs(const PolyMatrix& M);

enum class NilpotenceStatus { ProvenNilpotent, ProvenNot, ProbablyNilpotent, Inconclusive };

std::string to_string(NilpotenceStatus s);

struct NilpotenceVerdict {
    NilpotenceStatus status = NilpotenceStatus::Inconclusive;
    // ProvenNot (exact path): rational point where a characteristic
    // coefficient is exactly nonzero, plus that value.
    std::optional<RatVec> witness;
    std::optional<Rational> witness_value;
    // sampled path metadata
    std::optional<std::vector<double>> float_witness;
    int samples = 0;
    double tol = 0;
    std::string detail;
};

// Exact decision for the Jacobian of a polynomial map h: ProvenNilpotent iff
// every characteristic coefficient of J(h) is the zero polynomial; otherwise
// ProvenNot with a witness found by enumerating integer points in increasing
// max-norm (a nonzero polynomial over Q is nonzero at some integer point).
NilpotenceVerdict is_nilpotent_exact(const PolyMap& h);

// Unipotence of f decided as nilpotence of h = f - id.
NilpotenceVerdict is_unipotent(const PolyMap& f);

// Numeric surrogate for transcendental maps: samples points in
// [box_lo, box_hi]^n, evaluates the float Jacobian of h and its
// characteristic coefficients. ProbablyNilpotent when every |coeff| < tol at
// every sample; ProvenNot when some |coeff| > 10*tol (float witness kept).
NilpotenceVerdict is_nilpotent_sampled(const ExprMap& h, int samples = 500, double tol = 1e-9,
                                       double box_lo = -10.0, double box_hi = 10.0,
                                       std::uint64_t seed = 42);

bool matrix_power_zero(const PolyMatrix& M, int k);

// Deterministic witness search: first integer point (increasing max-norm,
// lexicographic within a shell) where p is nonzero.
RatVec nonzero_witness(const Poly& p);

std::vector<double> float_char_coeffs(const std::vector<double>& flat, int n);

} // namespace unimap
