#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unimap/poly.hpp"
#include "unimap/rational.hpp"

namespace unimap {

enum class ExprKind { Const, Var, Sum, Prod, Pow, Neg, Func };
enum class FuncKind { Sin, Cos, Exp, Phi };

std::string func_name(FuncKind f);

/// Immutable closed-form expression tree: rationals, variables, +, -, *,
/// nonnegative integer powers, sin/cos/exp, and the named univariate
/// placeholder phi. Values are shared; copying an Expr is cheap.
///
/// Inside a phi definition the single variable (index 0) stands for the
/// reserved parameter t.
class Expr {
public:
    Expr() = default;

    static Expr constant(const Rational& c);
    static Expr integer(long v) { return constant(Rational(v)); }
    static Expr variable(int index);
    // n-ary sum/product; nested nodes of the same kind are flattened so that
    // parse(render(e)) reproduces e structurally.
    static Expr sum(std::vector<Expr> children);
    static Expr prod(std::vector<Expr> children);
    static Expr pow(Expr base, unsigned exponent);
    // Negation of a literal folds into the constant.
    static Expr neg(Expr child);
    static Expr func(FuncKind f, Expr arg);

    bool valid() const { return node_ != nullptr; }
    ExprKind kind() const;
    const Rational& const_value() const;
    int var_index() const;
    const std::vector<Expr>& children() const;
    unsigned exponent() const;
    FuncKind func_kind() const;

    Expr operator+(const Expr& o) const { return sum({*this, o}); }
    Expr operator-(const Expr& o) const { return sum({*this, neg(o)}); }
    Expr operator*(const Expr& o) const { return prod({*this, o}); }
    Expr operator-() const { return neg(*this); }

    bool is_zero_literal() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

bool structurally_equal(const Expr& a, const Expr& b);

// Largest variable index used, or -1 for a closed expression.
int max_var_index(const Expr& e);
bool uses_var(const Expr& e, int index);
bool uses_phi(const Expr& e);
// True when no sin/cos/exp node occurs (phi allowed).
bool is_polynomial_shape(const Expr& e);

double eval_double(const Expr& e, const std::vector<double>& point,
                   const std::optional<Expr>& phi_def = std::nullopt);
// Exact path: throws InexactRequired on sin/cos/exp, MissingPhi when a phi
// node occurs without a definition.
Rational eval_exact(const Expr& e, const RatVec& point,
                    const std::optional<Expr>& phi_def = std::nullopt);

// Exact symbolic partial derivative. phi'(u) expands through the attached
// definition; differentiating a phi node without one throws MissingPhi.
Expr differentiate(const Expr& e, int var, const std::optional<Expr>& phi_def = std::nullopt);

// Replaces variable i by args[i] everywhere (phi nodes kept as phi of the
// substituted argument).
Expr substitute(const Expr& e, const std::vector<Expr>& args);

Poly to_poly(const Expr& e, int nvars, const std::optional<Poly>& phi_poly = std::nullopt);

Expr poly_to_expr(const Poly& p);

// Renders with minimal parentheses; output reparses to the same tree.
std::string render(const Expr& e, const std::vector<std::string>& var_names);
std::string render(const Expr& e); // x1, x2, ... naming (t for phi bodies is caller's concern)

} // namespace unimap
