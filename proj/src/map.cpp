#include "unimap/map.hpp"

#include "unimap/errors.hpp"

namespace unimap {

std::vector<double> ExprMap::eval(const std::vector<double>& p) const {
    if (static_cast<int>(p.size()) != dim) throw DimensionMismatch("point dimension mismatch");
    std::vector<double> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = eval_double(components[i], p, phi);
    return out;
}

RatVec ExprMap::eval(const RatVec& p) const {
    if (static_cast<int>(p.size()) != dim) throw DimensionMismatch("point dimension mismatch");
    RatVec out(dim);
    for (int i = 0; i < dim; ++i) out[i] = eval_exact(components[i], p, phi);
    return out;
}

RatVec PolyMap::eval(const RatVec& p) const {
    RatVec out(dim);
    for (int i = 0; i < dim; ++i) out[i] = components[i].eval(p);
    return out;
}

std::vector<double> PolyMap::eval(const std::vector<double>& p) const {
    std::vector<double> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = components[i].eval(p);
    return out;
}

bool PolyMap::is_constant() const {
    for (const auto& c : components) {
        if (!c.is_constant()) return false;
    }
    return true;
}

ExprMap identity_expr_map(int n) {
    ExprMap m;
    m.dim = n;
    for (int i = 0; i < n; ++i) m.components.push_back(Expr::variable(i));
    return m;
}

PolyMap identity_poly_map(int n) {
    PolyMap m;
    m.dim = n;
    for (int i = 0; i < n; ++i) m.components.push_back(Poly::variable(n, i));
    return m;
}

PolyMap zero_poly_map(int n) {
    PolyMap m;
    m.dim = n;
    m.components.assign(n, Poly(n));
    return m;
}

namespace {
std::optional<Expr> merge_phi(const std::optional<Expr>& a, const std::optional<Expr>& b) {
    if (a && b) {
        if (!structurally_equal(*a, *b)) throw Error("composition of maps with different phi definitions");
        return a;
    }
    return a ? a : b;
}
} // namespace

ExprMap compose(const ExprMap& f, const ExprMap& g) {
    if (f.dim != g.dim) throw DimensionMismatch("composition dimension mismatch");
    ExprMap out;
    out.dim = f.dim;
    out.phi = merge_phi(f.phi, g.phi);
    for (const auto& c : f.components) out.components.push_back(substitute(c, g.components));
    return out;
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
    if (f.dim != g.dim) throw DimensionMismatch("composition dimension mismatch");
    PolyMap out;
    out.dim = f.dim;
    for (const auto& c : f.components) out.components.push_back(c.substitute(g.components));
    return out;
}

PolyMap compose_power(const PolyMap& h, int times) {
    if (times < 1) throw Error("composition power requires at least one factor");
    PolyMap acc = h;
    for (int i = 1; i < times; ++i) acc = compose(h, acc);
    return acc;
}

PolyMap add(const PolyMap& a, const PolyMap& b) {
    if (a.dim != b.dim) throw DimensionMismatch("map sum dimension mismatch");
    PolyMap out;
    out.dim = a.dim;
    for (int i = 0; i < a.dim; ++i) out.components.push_back(a.components[i] + b.components[i]);
    return out;
}

PolyMap operator-(const PolyMap& a, const PolyMap& b) {
    if (a.dim != b.dim) throw DimensionMismatch("map difference dimension mismatch");
    PolyMap out;
    out.dim = a.dim;
    for (int i = 0; i < a.dim; ++i) out.components.push_back(a.components[i] - b.components[i]);
    return out;
}

ExprMap perturbation(const ExprMap& f) {
    ExprMap h;
    h.dim = f.dim;
    h.phi = f.phi;
    for (int i = 0; i < f.dim; ++i) h.components.push_back(f.components[i] - Expr::variable(i));
    return h;
}

PolyMap perturbation(const PolyMap& f) { return f - identity_poly_map(f.dim); }

PolyMap id_plus(const PolyMap& h) { return add(identity_poly_map(h.dim), h); }

PolyMap to_poly_map(const ExprMap& m) {
    std::optional<Poly> phi_poly;
    if (m.phi) {
        if (!is_polynomial_shape(*m.phi)) throw NotPolynomial("phi definition contains a transcendental node");
        phi_poly = to_poly(*m.phi, 1);
    }
    PolyMap out;
    out.dim = m.dim;
    for (const auto& c : m.components) out.components.push_back(to_poly(c, m.dim, phi_poly));
    return out;
}

ExprMap to_expr_map(const PolyMap& m) {
    ExprMap out;
    out.dim = m.dim;
    for (const auto& c : m.components) out.components.push_back(poly_to_expr(c));
    return out;
}

PolyMap make_cubic_linear(const std::vector<RatVec>& A) {
    int n = static_cast<int>(A.size());
    for (const auto& row : A) {
        if (static_cast<int>(row.size()) != n) throw DimensionMismatch("cubic-linear matrix must be square");
    }
    PolyMap f = identity_poly_map(n);
    for (int i = 0; i < n; ++i) {
        Poly row(n);
        for (int j = 0; j < n; ++j) {
            if (A[i][j] != 0) row += Poly::variable(n, j) * A[i][j];
        }
        f.components[i] += row.pow(3);
    }
    return f;
}

std::string render_map(const ExprMap& m) {
    std::vector<std::string> names;
    for (int i = 0; i < m.dim; ++i) names.push_back("x" + std::to_string(i + 1));
    std::string s = "dim " + std::to_string(m.dim) + ";\n";
    if (m.phi) s += "phi = " + render(*m.phi, {"t"}) + ";\n";
    for (int i = 0; i < m.dim; ++i) {
        s += "f" + std::to_string(i + 1) + " = " + render(m.components[i], names) + ";\n";
    }
    return s;
}

std::string render_map(const PolyMap& m) { return render_map(to_expr_map(m)); }

bool structurally_equal(const ExprMap& a, const ExprMap& b) {
    if (a.dim != b.dim) return false;
    if (a.phi.has_value() != b.phi.has_value()) return false;
    if (a.phi && !structurally_equal(*a.phi, *b.phi)) return false;
    for (int i = 0; i < a.dim; ++i) {
        if (!structurally_equal(a.components[i], b.components[i])) return false;
    }
    return true;
}

} // namespace unimap
