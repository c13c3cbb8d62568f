#include "unimap/expr.hpp"

#include <cmath>

#include "unimap/errors.hpp"

namespace unimap {

struct Expr::Node {
    ExprKind kind;
    Rational value;            // Const
    int var = -1;              // Var
    std::vector<Expr> children; // Sum/Prod (n-ary), Pow/Neg/Func (single/base)
    unsigned exponent = 0;     // Pow
    FuncKind func = FuncKind::Sin;
};

std::string func_name(FuncKind f) {
    switch (f) {
        case FuncKind::Sin: return "sin";
        case FuncKind::Cos: return "cos";
        case FuncKind::Exp: return "exp";
        case FuncKind::Phi: return "phi";
    }
    return "?";
}

Expr Expr::constant(const Rational& c) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Const;
    n->value = c;
    return Expr(std::move(n));
}

Expr Expr::variable(int index) {
    if (index < 0) throw Error("negative variable index");
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Var;
    n->var = index;
    return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> children) {
    std::vector<Expr> flat;
    for (auto& c : children) {
        if (!c.valid()) throw Error("invalid expression operand");
        if (c.kind() == ExprKind::Sum) {
            for (const auto& g : c.children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.empty()) return constant(0);
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Sum;
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::prod(std::vector<Expr> children) {
    std::vector<Expr> flat;
    for (auto& c : children) {
        if (!c.valid()) throw Error("invalid expression operand");
        if (c.kind() == ExprKind::Prod) {
            for (const auto& g : c.children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    if (flat.empty()) return constant(1);
    if (flat.size() == 1) return flat[0];
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Prod;
    n->children = std::move(flat);
    return Expr(std::move(n));
}

Expr Expr::pow(Expr base, unsigned exponent) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Pow;
    n->children.push_back(std::move(base));
    n->exponent = exponent;
    return Expr(std::move(n));
}

Expr Expr::neg(Expr child) {
    if (child.kind() == ExprKind::Const) return constant(-child.const_value());
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Neg;
    n->children.push_back(std::move(child));
    return Expr(std::move(n));
}

Expr Expr::func(FuncKind f, Expr arg) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Func;
    n->func = f;
    n->children.push_back(std::move(arg));
    return Expr(std::move(n));
}

ExprKind Expr::kind() const {
    if (!node_) throw Error("use of empty expression");
    return node_->kind;
}
const Rational& Expr::const_value() const { return node_->value; }
int Expr::var_index() const { return node_->var; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
unsigned Expr::exponent() const { return node_->exponent; }
FuncKind Expr::func_kind() const { return node_->func; }

bool Expr::is_zero_literal() const {
    return node_ && node_->kind == ExprKind::Const && node_->value == 0;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case ExprKind::Const: return a.const_value() == b.const_value();
        case ExprKind::Var: return a.var_index() == b.var_index();
        case ExprKind::Pow:
            if (a.exponent() != b.exponent()) return false;
            break;
        case ExprKind::Func:
            if (a.func_kind() != b.func_kind()) return false;
            break;
        default: break;
    }
    const auto& ca = a.children();
    const auto& cb = b.children();
    if (ca.size() != cb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i) {
        if (!structurally_equal(ca[i], cb[i])) return false;
    }
    return true;
}

int max_var_index(const Expr& e) {
    int m = -1;
    if (e.kind() == ExprKind::Var) return e.var_index();
    for (const auto& c : e.children()) m = std::max(m, max_var_index(c));
    return m;
}

bool uses_var(const Expr& e, int index) {
    if (e.kind() == ExprKind::Var) return e.var_index() == index;
    for (const auto& c : e.children()) {
        if (uses_var(c, index)) return true;
    }
    return false;
}

bool uses_phi(const Expr& e) {
    if (e.kind() == ExprKind::Func && e.func_kind() == FuncKind::Phi) return true;
    for (const auto& c : e.children()) {
        if (uses_phi(c)) return true;
    }
    return false;
}

bool is_polynomial_shape(const Expr& e) {
    if (e.kind() == ExprKind::Func && e.func_kind() != FuncKind::Phi) return false;
    for (const auto& c : e.children()) {
        if (!is_polynomial_shape(c)) return false;
    }
    return true;
}

double eval_double(const Expr& e, const std::vector<double>& point, const std::optional<Expr>& phi_def) {
    switch (e.kind()) {
        case ExprKind::Const: return to_double(e.const_value());
        case ExprKind::Var: {
            int i = e.var_index();
            if (i >= static_cast<int>(point.size())) throw DimensionMismatch("variable index beyond point dimension");
            return point[i];
        }
        case ExprKind::Sum: {
            double s = 0;
            for (const auto& c : e.children()) s += eval_double(c, point, phi_def);
            return s;
        }
        case ExprKind::Prod: {
            double p = 1;
            for (const auto& c : e.children()) p *= eval_double(c, point, phi_def);
            return p;
        }
        case ExprKind::Pow: return std::pow(eval_double(e.children()[0], point, phi_def), e.exponent());
        case ExprKind::Neg: return -eval_double(e.children()[0], point, phi_def);
        case ExprKind::Func: {
            double a = eval_double(e.children()[0], point, phi_def);
            switch (e.func_kind()) {
                case FuncKind::Sin: return std::sin(a);
                case FuncKind::Cos: return std::cos(a);
                case FuncKind::Exp: return std::exp(a);
                case FuncKind::Phi:
                    if (!phi_def) throw MissingPhi("phi evaluated without a definition");
                    return eval_double(*phi_def, {a});
            }
        }
    }
    throw Error("unreachable expression kind");
}

Rational eval_exact(const Expr& e, const RatVec& point, const std::optional<Expr>& phi_def) {
    switch (e.kind()) {
        case ExprKind::Const: return e.const_value();
        case ExprKind::Var: {
            int i = e.var_index();
            if (i >= static_cast<int>(point.size())) throw DimensionMismatch("variable index beyond point dimension");
            return point[i];
        }
        case ExprKind::Sum: {
            Rational s = 0;
            for (const auto& c : e.children()) s += eval_exact(c, point, phi_def);
            return s;
        }
        case ExprKind::Prod: {
            Rational p = 1;
            for (const auto& c : e.children()) p *= eval_exact(c, point, phi_def);
            return p;
        }
        case ExprKind::Pow: return rational_pow(eval_exact(e.children()[0], point, phi_def), e.exponent());
        case ExprKind::Neg: return -eval_exact(e.children()[0], point, phi_def);
        case ExprKind::Func: {
            if (e.func_kind() == FuncKind::Phi) {
                if (!phi_def) throw MissingPhi("phi evaluated without a definition");
                Rational a = eval_exact(e.children()[0], point, phi_def);
                return eval_exact(*phi_def, {a});
            }
            throw InexactRequired("exact evaluation of " + func_name(e.func_kind()));
        }
    }
    throw Error("unreachable expression kind");
}

Expr differentiate(const Expr& e, int var, const std::optional<Expr>& phi_def) {
    switch (e.kind()) {
        case ExprKind::Const: return Expr::constant(0);
        case ExprKind::Var: return Expr::constant(e.var_index() == var ? 1 : 0);
        case ExprKind::Sum: {
            std::vector<Expr> parts;
            for (const auto& c : e.children()) {
                Expr d = differentiate(c, var, phi_def);
                if (!d.is_zero_literal()) parts.push_back(d);
            }
            return Expr::sum(std::move(parts));
        }
        case ExprKind::Prod: {
            const auto& ch = e.children();
            std::vector<Expr> parts;
            for (size_t i = 0; i < ch.size(); ++i) {
                Expr d = differentiate(ch[i], var, phi_def);
                if (d.is_zero_literal()) continue;
                std::vector<Expr> factors;
                for (size_t j = 0; j < ch.size(); ++j) factors.push_back(j == i ? d : ch[j]);
                parts.push_back(Expr::prod(std::move(factors)));
            }
            return Expr::sum(std::move(parts));
        }
        case ExprKind::Pow: {
            unsigned k = e.exponent();
            if (k == 0) return Expr::constant(0);
            Expr d = differentiate(e.children()[0], var, phi_def);
            if (d.is_zero_literal()) return d;
            return Expr::prod({Expr::integer(static_cast<long>(k)),
                               Expr::pow(e.children()[0], k - 1), d});
        }
        case ExprKind::Neg: return Expr::neg(differentiate(e.children()[0], var, phi_def));
        case ExprKind::Func: {
            const Expr& u = e.children()[0];
            Expr du = differentiate(u, var, phi_def);
            if (du.is_zero_literal()) return du;
            Expr outer;
            switch (e.func_kind()) {
                case FuncKind::Sin: outer = Expr::func(FuncKind::Cos, u); break;
                case FuncKind::Cos: outer = Expr::neg(Expr::func(FuncKind::Sin, u)); break;
                case FuncKind::Exp: outer = Expr::func(FuncKind::Exp, u); break;
                case FuncKind::Phi: {
                    if (!phi_def) throw MissingPhi("phi differentiated without a definition");
                    Expr dphi = differentiate(*phi_def, 0, std::nullopt);
                    outer = substitute(dphi, {u});
                    break;
                }
            }
            return Expr::prod({outer, du});
        }
    }
    throw Error("unreachable expression kind");
}

Expr substitute(const Expr& e, const std::vector<Expr>& args) {
    switch (e.kind()) {
        case ExprKind::Const: return e;
        case ExprKind::Var: {
            int i = e.var_index();
            if (i >= static_cast<int>(args.size())) throw DimensionMismatch("substitution misses variable x" + std::to_string(i + 1));
            return args[i];
        }
        case ExprKind::Sum: {
            std::vector<Expr> ch;
            for (const auto& c : e.children()) ch.push_back(substitute(c, args));
            return Expr::sum(std::move(ch));
        }
        case ExprKind::Prod: {
            std::vector<Expr> ch;
            for (const auto& c : e.children()) ch.push_back(substitute(c, args));
            return Expr::prod(std::move(ch));
        }
        case ExprKind::Pow: return Expr::pow(substitute(e.children()[0], args), e.exponent());
        case ExprKind::Neg: return Expr::neg(substitute(e.children()[0], args));
        case ExprKind::Func: return Expr::func(e.func_kind(), substitute(e.children()[0], args));
    }
    throw Error("unreachable expression kind");
}

Poly to_poly(const Expr& e, int nvars, const std::optional<Poly>& phi_poly) {
    switch (e.kind()) {
        case ExprKind::Const: return Poly::constant(nvars, e.const_value());
        case ExprKind::Var: {
            if (e.var_index() >= nvars) throw DimensionMismatch("variable x" + std::to_string(e.var_index() + 1) + " beyond dimension");
            return Poly::variable(nvars, e.var_index());
        }
        case ExprKind::Sum: {
            Poly s(nvars);
            for (const auto& c : e.children()) s += to_poly(c, nvars, phi_poly);
            return s;
        }
        case ExprKind::Prod: {
            Poly p = Poly::constant(nvars, 1);
            for (const auto& c : e.children()) p = p * to_poly(c, nvars, phi_poly);
            return p;
        }
        case ExprKind::Pow: return to_poly(e.children()[0], nvars, phi_poly).pow(e.exponent());
        case ExprKind::Neg: return -to_poly(e.children()[0], nvars, phi_poly);
        case ExprKind::Func: {
            if (e.func_kind() == FuncKind::Phi) {
                if (!phi_poly) throw NotPolynomial("phi without polynomial definition");
                Poly arg = to_poly(e.children()[0], nvars, phi_poly);
                return phi_poly->substitute({arg});
            }
            throw NotPolynomial(func_name(e.func_kind()) + "(...)");
        }
    }
    throw Error("unreachable expression kind");
}

Expr poly_to_expr(const Poly& p) {
    if (p.is_zero()) return Expr::constant(0);
    std::vector<Expr> terms;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::vector<Expr> factors;
        bool negative = c < 0;
        Rational a = negative ? Rational(-c) : c;
        if (a != 1 || monomial_degree(m) == 0) factors.push_back(Expr::constant(a));
        for (int i = 0; i < p.nvars(); ++i) {
            if (m[i] == 0) continue;
            factors.push_back(m[i] == 1 ? Expr::variable(i) : Expr::pow(Expr::variable(i), m[i]));
        }
        Expr t = Expr::prod(std::move(factors));
        terms.push_back(negative ? Expr::neg(t) : t);
    }
    return Expr::sum(std::move(terms));
}

namespace {

// precedence levels: sum(1) < neg(2) < prod(3) < pow(4) < atom(5)
int precedence(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::Sum: return 1;
        case ExprKind::Neg: return 2;
        case ExprKind::Prod: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

std::string render_prec(const Expr& e, const std::vector<std::string>& names, int parent) {
    int self = precedence(e);
    std::string s;
    switch (e.kind()) {
        case ExprKind::Const: {
            s = to_string(e.const_value());
            // a negative literal binds like a negation
            if (e.const_value() < 0) self = 2;
            break;
        }
        case ExprKind::Var: {
            int i = e.var_index();
            s = i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i + 1);
            break;
        }
        case ExprKind::Sum: {
            const auto& ch = e.children();
            for (size_t i = 0; i < ch.size(); ++i) {
                if (i == 0) {
                    s += render_prec(ch[i], names, 1);
                    continue;
                }
                // render "+ neg(x)" as "- x"
                if (ch[i].kind() == ExprKind::Neg) {
                    s += " - " + render_prec(ch[i].children()[0], names, 2);
                } else if (ch[i].kind() == ExprKind::Const && ch[i].const_value() < 0) {
                    s += " - " + to_string(Rational(-ch[i].const_value()));
                } else {
                    s += " + " + render_prec(ch[i], names, 1);
                }
            }
            break;
        }
        case ExprKind::Prod: {
            const auto& ch = e.children();
            for (size_t i = 0; i < ch.size(); ++i) {
                if (i) s += "*";
                s += render_prec(ch[i], names, 3);
            }
            break;
        }
        case ExprKind::Pow:
            s = render_prec(e.children()[0], names, 4) + "^" + std::to_string(e.exponent());
            break;
        case ExprKind::Neg: s = "-" + render_prec(e.children()[0], names, 2); break;
        case ExprKind::Func:
            s = func_name(e.func_kind()) + "(" + render_prec(e.children()[0], names, 0) + ")";
            break;
    }
    if (self < parent || (self == parent && (e.kind() == ExprKind::Pow))) {
        // pow is non-associative in the grammar; parenthesize nested bases
        return "(" + s + ")";
    }
    return s;
}

} // namespace

std::string render(const Expr& e, const std::vector<std::string>& var_names) {
    return render_prec(e, var_names, 0);
}

std::string render(const Expr& e) {
    return render(e, {});
}

} // namespace unimap
