#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unimap/rational.hpp"

namespace unimap {

// Exponent vector; length equals the ambient variable count.
using Monomial = std::vector<std::uint32_t>;

inline unsigned monomial_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

// Graded lexicographic: compare total degree first, then exponents left to
// right. This is the canonical term order for the whole library.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Cap on the term count of any single polynomial produced by arithmetic.
// Generic-point Jacobian products and composition powers blow up
// combinatorially; the cap turns that into a clean ResourceLimit error.
std::size_t poly_term_cap();
void set_poly_term_cap(std::size_t cap);

// RAII override of the term cap (tests and the CLI use this).
class PolyTermCapGuard {
public:
    explicit PolyTermCapGuard(std::size_t cap) : saved_(poly_term_cap()) { set_poly_term_cap(cap); }
    ~PolyTermCapGuard() { set_poly_term_cap(saved_); }

private:
    std::size_t saved_;
};

/// Sparse multivariate polynomial with exact rational coefficients in
/// canonical form: no zero coefficients stored, terms ordered graded-lex.
/// Equality is structural and decides "identically zero" exactly.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    explicit Poly(int nvars = 0) : nvars_(nvars) {}

    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int index);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // -1 for the zero polynomial.
    int total_degree() const;
    std::size_t term_count() const { return terms_.size(); }
    Rational constant_term() const;
    const TermMap& terms() const { return terms_; }

    void set_coefficient(const Monomial& m, const Rational& c);
    Rational coefficient(const Monomial& m) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    Poly operator*(const Rational& c) const;
    Poly operator/(const Rational& c) const;

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    // Graded-lex order on term lists; used for deterministic sorting.
    bool operator<(const Poly& o) const;

    Poly pow(unsigned e) const;
    Poly derivative(int var) const;

    Rational eval(const RatVec& point) const;
    double eval(const std::vector<double>& point) const;

    // Simultaneous substitution of args[i] for variable i; args.size() must
    // equal nvars(). All args must share a variable count.
    Poly substitute(const std::vector<Poly>& args) const;

    // Widens/reindexes: variable i becomes variable map[i] in a ring with
    // new_nvars variables.
    Poly reindex(int new_nvars, const std::vector<int>& map) const;

    // Homogeneous slice of the given total degree.
    Poly homogeneous_part(unsigned degree) const;

    // True iff no term uses any variable with index < first_allowed.
    bool depends_only_on_vars_from(int first_allowed) const;
    bool uses_var(int var) const;

    std::string to_string(const std::vector<std::string>& var_names) const;
    std::string to_string() const; // x1, x2, ... naming

private:
    void check_cap() const;

    int nvars_;
    TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

// Univariate helpers (nvars == 1), used by the Sturm machinery.
int uni_degree(const Poly& p);
Rational uni_leading_coeff(const Poly& p);
// Division with remainder: p = q*d + r, deg r < deg d.
std::pair<Poly, Poly> uni_divmod(const Poly& p, const Poly& d);
// Content-normalized gcd (monic unless zero).
Poly uni_gcd(Poly a, Poly b);

} // namespace unimap
