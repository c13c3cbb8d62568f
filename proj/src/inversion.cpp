#include "unimap/inversion.hpp"

#include <cmath>

#include "unimap/errors.hpp"
#include "unimap/jacobian.hpp"

namespace unimap {

ExprMap g_family(const ExprMap& f, const RatVec& a) {
    if (static_cast<int>(a.size()) != f.dim) throw DimensionMismatch("anchor point dimension mismatch");
    ExprMap g;
    g.dim = f.dim;
    g.phi = f.phi;
    for (int i = 0; i < f.dim; ++i) {
        g.components.push_back(Expr::variable(i) - f.components[i] + Expr::constant(a[i]));
    }
    return g;
}

PolyMap g_family(const PolyMap& f, const RatVec& a) {
    if (static_cast<int>(a.size()) != f.dim) throw DimensionMismatch("anchor point dimension mismatch");
    PolyMap g = identity_poly_map(f.dim) - f;
    for (int i = 0; i < f.dim; ++i) g.components[i] += Poly::constant(f.dim, a[i]);
    return g;
}

PowerConstancy symbolic_power_constancy(const PolyMap& h, int cap) {
    int n = h.dim;
    if (cap < 0) cap = 2 * n;
    PowerConstancy out;
    out.cap = cap;

    // ring in 2n variables: 0..n-1 = w, n..2n-1 = y
    int big = 2 * n;
    std::vector<int> widen(n);
    for (int i = 0; i < n; ++i) widen[i] = i;

    PolyMap tau; // tau_y(w) = y - h(w)
    tau.dim = big;
    for (int i = 0; i < n; ++i) {
        tau.components.push_back(Poly::variable(big, n + i) - h.components[i].reindex(big, widen));
    }
    for (int i = n; i < big; ++i) tau.components.push_back(Poly::variable(big, i));

    PolyMap cur = tau;
    try {
        for (int m = 1; m <= cap; ++m) {
            bool w_free = true;
            for (int i = 0; i < n && w_free; ++i) {
                w_free = cur.components[i].depends_only_on_vars_from(n);
            }
            if (w_free) {
                out.power = m;
                // express x(y) in n variables
                std::vector<int> shrink(big, 0);
                for (int i = 0; i < n; ++i) {
                    shrink[i] = 0; // unused
                    shrink[n + i] = i;
                }
                PolyMap formula;
                formula.dim = n;
                for (int i = 0; i < n; ++i) formula.components.push_back(cur.components[i].reindex(n, shrink));
                out.formula = formula;
                return out;
            }
            if (m == cap) break;
            cur = compose(tau, cur);
        }
    } catch (const ResourceLimit&) {
        out.capped = true;
        return out;
    }
    out.capped = true;
    return out;
}

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> apply_tau(const ExprMap& f, const std::vector<double>& y, std::vector<double> x, int m) {
    // tau_y(w) = y - h(w) = y - f(w) + w
    for (int k = 0; k < m; ++k) {
        std::vector<double> fx = f.eval(x);
        for (size_t i = 0; i < x.size(); ++i) x[i] = y[i] - fx[i] + x[i];
    }
    return x;
}

RatVec apply_tau_exact(const ExprMap& f, const RatVec& y, RatVec x, int m) {
    for (int k = 0; k < m; ++k) {
        RatVec fx = f.eval(x);
        for (size_t i = 0; i < x.size(); ++i) x[i] = y[i] - fx[i] + x[i];
    }
    return x;
}

} // namespace

InversionResult invert_by_power(const ExprMap& f, const std::vector<double>& y, int m, double tol) {
    if (m < 1) throw PreconditionError("power must be >= 1");
    int n = f.dim;
    InversionResult r;
    r.power = m;
    r.method = "NumericPower";
    std::vector<double> a = apply_tau(f, y, std::vector<double>(n, 0.0), m);
    std::vector<double> b = apply_tau(f, y, std::vector<double>(n, 1.0), m);
    if (max_abs_diff(a, b) > tol) {
        r.status = InversionStatus::ConstancyNotReached;
        r.point = a;
        r.residual = max_abs_diff(a, b);
        return r;
    }
    r.point = a;
    r.residual = max_abs_diff(f.eval(a), y);
    if (r.residual > tol) r.status = InversionStatus::NotAnInverse;
    return r;
}

InversionResult invert_by_power_exact(const ExprMap& f, const RatVec& y, int m) {
    if (m < 1) throw PreconditionError("power must be >= 1");
    int n = f.dim;
    InversionResult r;
    r.power = m;
    r.method = "SymbolicPower";
    RatVec a = apply_tau_exact(f, y, RatVec(n, Rational(0)), m);
    RatVec b = apply_tau_exact(f, y, RatVec(n, Rational(1)), m);
    if (a != b) {
        r.status = InversionStatus::ConstancyNotReached;
        return r;
    }
    RatVec fa = f.eval(a);
    if (fa != y) {
        r.status = InversionStatus::NotAnInverse;
        return r;
    }
    r.exact_point = a;
    r.point.reserve(n);
    for (const auto& c : a) r.point.push_back(to_double(c));
    r.residual = 0;
    return r;
}

PlanarInverse planar_inverse_closed_forms(const ExprMap& f, const std::vector<double>& z, double tol) {
    if (f.dim != 2) throw PreconditionError("planar closed forms require n = 2");
    PlanarInverse out;
    auto g = [&f](const std::vector<double>& p) {
        std::vector<double> fp = f.eval(p);
        return std::vector<double>{p[0] - fp[0], p[1] - fp[1]};
    };
    // z + g(z + g(z))
    std::vector<double> gz = g(z);
    std::vector<double> inner{z[0] + gz[0], z[1] + gz[1]};
    std::vector<double> ginner = g(inner);
    out.via_g = {z[0] + ginner[0], z[1] + ginner[1]};
    // z - f(-z) - f(-f(-z))
    std::vector<double> mz{-z[0], -z[1]};
    std::vector<double> fmz = f.eval(mz);
    std::vector<double> m2{-fmz[0], -fmz[1]};
    std::vector<double> f2 = f.eval(m2);
    out.via_reflection = {z[0] - fmz[0] - f2[0], z[1] - fmz[1] - f2[1]};

    out.disagreement = max_abs_diff(out.via_g, out.via_reflection);
    out.residual = max_abs_diff(f.eval(out.via_g), z);
    if (out.disagreement > tol || out.residual > tol) {
        // both formulas are universally valid for unipotent J(f); a
        // disagreement means the caller's unipotence certificate was wrong
        out.status = InversionStatus::NotAnInverse;
    }
    return out;
}

std::pair<PolyMap, PolyMap> planar_inverse_formulas_symbolic(const PolyMap& f) {
    if (f.dim != 2) throw PreconditionError("planar closed forms require n = 2");
    PolyMap id = identity_poly_map(2);
    PolyMap G = id - f;
    PolyMap via_g = add(id, compose(G, add(id, G)));
    PolyMap neg = zero_poly_map(2);
    for (int i = 0; i < 2; ++i) neg.components[i] = -Poly::variable(2, i);
    PolyMap fn = compose(f, neg);                          // f(-z)
    PolyMap fnfn = compose(f, compose(neg, fn));           // f(-f(-z))
    PolyMap via_refl = id - fn - fnfn;
    return {via_g, via_refl};
}

FixedPointReport fixed_point_iterate(const ExprMap& h, const std::vector<double>& start, int max_iter, double tol) {
    FixedPointReport r;
    std::vector<double> x = start;
    for (int k = 0; k < max_iter; ++k) {
        std::vector<double> hx = h.eval(x);
        r.residual = max_abs_diff(hx, x);
        r.iterations = k + 1;
        if (r.residual < tol) {
            r.converged = true;
            r.point = hx;
            return r;
        }
        x = hx;
        double norm = 0;
        for (double v : x) norm += v * v;
        if (!std::isfinite(norm) || norm > 1e24) {
            r.diverged = true;
            r.point = x;
            return r;
        }
    }
    r.point = x;
    return r;
}

bool isolated_fixed_point_check(const PolyMap& f, const RatVec& p) {
    RatVec fp = f.eval(p);
    if (fp != p) throw PreconditionError("point is not fixed by the map");
    RatMatrix J = jacobian(f).eval(p);
    RatMatrix JmI = J - RatMatrix::identity(f.dim);
    return JmI.det() != 0;
}

} // namespace unimap
