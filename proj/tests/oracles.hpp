// Test-only oracles and generators, kept independent of the library paths
// they check.
#pragma once

#include <functional>
#include <vector>

#include "unimap/expr.hpp"
#include "unimap/map.hpp"
#include "unimap/newclass.hpp"
#include "unimap/poly.hpp"
#include "unimap/rng.hpp"

namespace unimap::testing {

// Central finite difference d/dx_i at a float point.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x, int i, double h = 1e-5) {
    double step = h * std::max(1.0, std::abs(x[i]));
    double save = x[i];
    x[i] = save + step;
    double hi = f(x);
    x[i] = save - step;
    double lo = f(x);
    x[i] = save;
    return (hi - lo) / (2 * step);
}

// ---------------------------------------------------------------------------
// Independent real-root counter: recursive critical-point bisection with
// exact rational sign evaluations. No remainder sequences involved.

namespace detail {

inline int sgn(const Rational& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

// Exact roots inside (lo, hi) for a polynomial that is monotone there
// because all critical points lie outside. Bisects to width 1e-9.
inline void bisect_root(const Poly& p, Rational lo, Rational hi, std::vector<Rational>& out) {
    int slo = sgn(p.eval(RatVec{lo}));
    int shi = sgn(p.eval(RatVec{hi}));
    if (slo == 0) {
        out.push_back(lo); // caller dedupes
        return;
    }
    if (shi == 0) return; // owned by the adjacent interval
    if (slo == shi) return;
    Rational width_target = rat(1, 1'000'000'000);
    while (hi - lo > width_target) {
        Rational mid = (lo + hi) / 2;
        int sm = sgn(p.eval(RatVec{mid}));
        if (sm == 0) {
            out.push_back(mid);
            return;
        }
        if (sm == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.push_back((lo + hi) / 2);
}

} // namespace detail

// Distinct real roots (as exact rationals or 1e-9-wide approximations) of a
// univariate polynomial, via recursion on the derivative's roots.
inline std::vector<Rational> oracle_real_roots(const Poly& p) {
    std::vector<Rational> roots;
    if (p.nvars() != 1 || p.is_zero() || p.is_constant()) return roots;
    if (uni_degree(p) == 1) {
        // a t + b = 0
        Rational a = uni_leading_coeff(p);
        Rational b = p.constant_term();
        roots.push_back(-b / a);
        return roots;
    }
    std::vector<Rational> crit = oracle_real_roots(p.derivative(0));
    // Cauchy bound
    Rational lead = uni_leading_coeff(p);
    Rational B = 1;
    for (const auto& [m, c] : p.terms()) {
        Rational r = abs(c / lead) + 1;
        if (r > B) B = r;
    }
    std::vector<Rational> breaks{-B};
    for (const auto& c : crit) {
        if (c > -B && c < B) breaks.push_back(c);
    }
    breaks.push_back(B);
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        // exact hit at a critical point
        if (i > 0 && p.eval(RatVec{breaks[i]}) == 0) roots.push_back(breaks[i]);
        detail::bisect_root(p, breaks[i], breaks[i + 1], roots);
    }
    // dedupe (exact hits can repeat across adjacent segments)
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Random canonical polynomial with small integer coefficients.
inline Poly random_poly(Rng& rng, int nvars, int max_degree, int terms, long coeff_range = 4) {
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(nvars, 0);
        int budget = static_cast<int>(rng.uniform_int(0, max_degree));
        for (int d = 0; d < budget; ++d) {
            m[static_cast<size_t>(rng.uniform_int(0, nvars - 1))] += 1;
        }
        Rational c = rng.rational(coeff_range);
        if (c == 0) c = 1;
        p += Poly::constant(nvars, c) * [&] {
            Poly mono = Poly::constant(nvars, Rational(1));
            for (int v = 0; v < nvars; ++v) {
                for (std::uint32_t k = 0; k < m[v]; ++k) mono = mono * Poly::variable(nvars, v);
            }
            return mono;
        }();
    }
    return p;
}

// Random univariate integer polynomial of bounded degree (nonzero).
inline Poly random_int_poly(Rng& rng, int max_degree, long coeff_range = 20) {
    Poly p(1);
    int deg = static_cast<int>(rng.uniform_int(1, max_degree));
    for (int k = 0; k <= deg; ++k) {
        long c = rng.uniform_int(-coeff_range, coeff_range);
        if (k == deg && c == 0) c = 1;
        if (c != 0) p.set_coefficient(Monomial{static_cast<std::uint32_t>(k)}, Rational(c));
    }
    return p;
}

// Random expression in the parameter variables x_{min_var+1}..x_n only
// (0-based: indices >= min_var). Degree <= 2, small coefficients.
inline Expr random_param_expr(Rng& rng, int dim, int min_var, int terms = 2) {
    int k = dim - min_var;
    if (k <= 0) return Expr::constant(rng.rational(2));
    Poly p = random_poly(rng, k, 2, terms, 2);
    std::vector<int> remap(k);
    for (int i = 0; i < k; ++i) remap[i] = min_var + i;
    return poly_to_expr(p.reindex(dim, remap));
}

// Random polynomial recipe: dimension n, stage chain up to target_level,
// entries of degree <= 2 in the allowed parameters.
inline NewClassRecipe random_recipe(Rng& rng, int dim, int target_level) {
    NewClassRecipe recipe;
    recipe.dim = dim;
    recipe.base_h1 = random_param_expr(rng, dim, 1);
    for (int lvl = 2; lvl <= target_level; ++lvl) {
        RecipeStage stage;
        stage.level = lvl;
        stage.M.assign(lvl, std::vector<Expr>(lvl, Expr::constant(0)));
        for (int r = 0; r < lvl; ++r) {
            for (int c = 0; c < lvl; ++c) {
                // mostly sparse: plain constants off-diagonal, occasional
                // parameter-dependent entry, nonzero diagonal
                long pick = rng.uniform_int(0, 3);
                if (pick == 0) {
                    stage.M[r][c] = random_param_expr(rng, dim, lvl, 1);
                } else if (pick == 1 || r == c) {
                    Rational v = rng.rational(2);
                    if (r == c && v == 0) v = 1;
                    stage.M[r][c] = Expr::constant(v);
                }
            }
        }
        stage.offset.assign(lvl, Expr::constant(0));
        for (int r = 0; r < lvl; ++r) {
            if (rng.uniform_int(0, 1) == 0) stage.offset[r] = random_param_expr(rng, dim, lvl, 1);
        }
        recipe.stages.push_back(std::move(stage));
    }
    return recipe;
}

} // namespace unimap::testing
