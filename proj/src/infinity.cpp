#include "unimap/infinity.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "unimap/errors.hpp"
#include "unimap/jacobian.hpp"
#include "unimap/ratmatrix.hpp"
#include "unimap/rng.hpp"

namespace unimap {

LeadingFormSet leading_forms(const PolyMap& f) {
    LeadingFormSet out;
    out.n = f.dim;
    int d = -1;
    for (const auto& c : f.components) {
        int di = c.total_degree();
        out.degrees.push_back(di);
        d = std::max(d, di);
        out.leading.push_back(di < 0 ? Poly(f.dim) : c.homogeneous_part(static_cast<unsigned>(di)));
    }
    out.algebraic_degree = d;
    for (const auto& c : f.components) {
        out.degree_d_forms.push_back(d < 0 ? Poly(f.dim) : c.homogeneous_part(static_cast<unsigned>(d)));
    }
    return out;
}

SturmChain sturm_chain(const Poly& p) {
    if (p.nvars() != 1) throw PreconditionError("Sturm chain requires a univariate polynomial");
    SturmChain chain;
    chain.sequence.push_back(p);
    Poly d = p.derivative(0);
    if (!d.is_zero()) {
        chain.sequence.push_back(d);
        while (true) {
            const Poly& a = chain.sequence[chain.sequence.size() - 2];
            const Poly& b = chain.sequence.back();
            Poly r = uni_divmod(a, b).second;
            if (r.is_zero()) break;
            chain.sequence.push_back(-r);
        }
    }
    return chain;
}

namespace {

int sign_of(const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : -1); }

// sign of p at a finite point, or at -/+ infinity from the leading term
int sign_at(const Poly& p, const std::optional<Rational>& at, bool plus_infinity) {
    if (p.is_zero()) return 0;
    if (at) return sign_of(p.eval(RatVec{*at}));
    int s = sign_of(uni_leading_coeff(p));
    if (!plus_infinity && uni_degree(p) % 2 == 1) s = -s;
    return s;
}

int variations(const SturmChain& chain, const std::optional<Rational>& at, bool plus_infinity) {
    int count = 0, prev = 0;
    for (const auto& p : chain.sequence) {
        int s = sign_at(p, at, plus_infinity);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// strips roots at the given point: divides out (x - r) while r is a root
Poly strip_root(Poly p, const Rational& r) {
    Poly lin(1);
    lin.set_coefficient(Monomial{1}, Rational(1));
    lin.set_coefficient(Monomial{0}, -r);
    while (!p.is_zero() && p.eval(RatVec{r}) == 0) {
        p = uni_divmod(p, lin).first;
    }
    return p;
}

} // namespace

int sturm_count(const Poly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (p.is_zero()) throw PreconditionError("root counting requires a nonzero polynomial");
    Poly q = p;
    if (lo) q = strip_root(q, *lo);
    if (hi) q = strip_root(q, *hi);
    if (q.is_constant()) return 0;
    SturmChain chain = sturm_chain(q);
    // V(lo) - V(hi) counts distinct roots in (lo, hi]; endpoint roots were
    // stripped, so this equals the count in the open interval
    return variations(chain, lo, false) - variations(chain, hi, true);
}

int sturm_count_all(const Poly& p) { return sturm_count(p, std::nullopt, std::nullopt); }

std::vector<RealRoot> isolate_real_roots(const Poly& p) {
    std::vector<RealRoot> roots;
    if (p.is_zero() || p.is_constant()) return roots;
    // Cauchy bound: 1 + max |a_i| / |a_d|
    Rational lead = uni_leading_coeff(p);
    Rational maxr = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational r = abs(c / lead);
        if (r > maxr) maxr = r;
    }
    Rational B = maxr + 1;

    struct Seg {
        Rational lo, hi;
        int count;
    };
    std::vector<Seg> stack{{-B, B, sturm_count(p, Rational(-B), B)}};
    // collect exact endpoint roots of the initial interval (there are none:
    // |root| < B strictly), then bisect
    const Rational width_target = rat(1, 1'000'000'000);
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 0) continue;
        Rational mid = (s.lo + s.hi) / 2;
        if (p.eval(RatVec{mid}) == 0) {
            RealRoot r;
            r.exact = mid;
            r.lo = r.hi = mid;
            r.approx = to_double(mid);
            roots.push_back(r);
            // continue on both sides of the exact root
            int left = sturm_count(p, s.lo, mid);
            int right = sturm_count(p, mid, s.hi);
            if (left) stack.push_back({s.lo, mid, left});
            if (right) stack.push_back({mid, s.hi, right});
            continue;
        }
        if (s.count == 1 && s.hi - s.lo < width_target) {
            RealRoot r;
            r.lo = s.lo;
            r.hi = s.hi;
            r.approx = to_double((s.lo + s.hi) / 2);
            // simple rational roots are reconstructed exactly
            for (long den = 1; den <= 16 && !r.exact; ++den) {
                Rational cand = rat(std::lround(r.approx * den), den);
                if (cand >= s.lo && cand <= s.hi && p.eval(RatVec{cand}) == 0) r.exact = cand;
            }
            roots.push_back(r);
            continue;
        }
        int left = sturm_count(p, s.lo, mid);
        int right = s.count - left;
        if (left) stack.push_back({s.lo, mid, left});
        if (right) stack.push_back({mid, s.hi, right});
    }
    std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
    return roots;
}

std::string to_string(ZeroVerdict v) {
    switch (v) {
        case ZeroVerdict::ProvenHolds: return "ProvenHolds";
        case ZeroVerdict::ProvenFails: return "ProvenFails";
        case ZeroVerdict::ProbablyHolds: return "ProbablyHolds";
        case ZeroVerdict::NumericFails: return "NumericFails";
        case ZeroVerdict::Undetermined: return "Undetermined";
    }
    return "?";
}

namespace {

// Common nontrivial real zero of bivariate homogeneous forms, decided
// exactly. Zero forms constrain nothing.
DirectionCertificate common_zero_bivariate(const std::vector<Poly>& forms) {
    DirectionCertificate out;
    out.exact = true;
    std::vector<const Poly*> nonzero;
    for (const auto& f : forms) {
        if (!f.is_zero()) nonzero.push_back(&f);
    }
    if (nonzero.empty()) {
        out.verdict = ZeroVerdict::ProvenFails;
        out.direction = RatVec{Rational(1), Rational(0)};
        out.detail = "all forms are identically zero; every direction is a common zero";
        return out;
    }
    // direction (1, 0): x-axis
    bool axis_common = true;
    for (const auto* f : nonzero) {
        if (f->eval(RatVec{Rational(1), Rational(0)}) != 0) {
            axis_common = false;
            break;
        }
    }
    if (axis_common) {
        out.verdict = ZeroVerdict::ProvenFails;
        out.direction = RatVec{Rational(1), Rational(0)};
        out.detail = "common zero in the direction (1, 0)";
        return out;
    }
    // directions with y != 0: common real roots of the dehomogenizations
    Poly g = (*nonzero[0]).substitute({Poly::variable(1, 0), Poly::constant(1, Rational(1))});
    for (size_t i = 1; i < nonzero.size(); ++i) {
        Poly gi = (*nonzero[i]).substitute({Poly::variable(1, 0), Poly::constant(1, Rational(1))});
        g = uni_gcd(g, gi);
    }
    if (g.is_zero()) throw Error("unexpected zero gcd of nonzero forms");
    if (g.is_constant()) {
        out.verdict = ZeroVerdict::ProvenHolds;
        out.detail = "dehomogenized forms are coprime; only common zero is the origin";
        return out;
    }
    int nroots = sturm_count_all(g);
    if (nroots == 0) {
        out.verdict = ZeroVerdict::ProvenHolds;
        out.detail = "gcd of dehomogenized forms has no real root";
        return out;
    }
    out.verdict = ZeroVerdict::ProvenFails;
    auto roots = isolate_real_roots(g);
    if (!roots.empty() && roots.front().exact) {
        out.direction = RatVec{*roots.front().exact, Rational(1)};
        out.detail = "common zero in the exact direction (" + unimap::to_string(*roots.front().exact) + ", 1)";
    } else if (!roots.empty()) {
        out.float_direction = std::vector<double>{roots.front().approx, 1.0};
        out.detail = "common zero direction isolated in [" + unimap::to_string(roots.front().lo) + ", " +
                     unimap::to_string(roots.front().hi) + "] (t, 1); sign change certified exactly";
    }
    return out;
}

// Linear forms: common nontrivial zero iff the coefficient matrix has a
// nontrivial kernel. Exact in any dimension.
DirectionCertificate common_zero_linear(const std::vector<Poly>& forms, int n) {
    DirectionCertificate out;
    out.exact = true;
    std::vector<RatVec> rows;
    for (const auto& f : forms) {
        if (f.is_zero()) continue;
        RatVec row(n, Rational(0));
        for (int j = 0; j < n; ++j) {
            Monomial m(n, 0);
            m[j] = 1;
            row[j] = f.coefficient(m);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        out.verdict = ZeroVerdict::ProvenFails;
        RatVec dir(n, Rational(0));
        dir[0] = 1;
        out.direction = dir;
        out.detail = "all degree-1 forms vanish identically";
        return out;
    }
    auto kernel = RatMatrix::from_rows(rows).kernel_basis();
    if (kernel.empty()) {
        out.verdict = ZeroVerdict::ProvenHolds;
        out.detail = "linear forms have full rank";
        return out;
    }
    out.verdict = ZeroVerdict::ProvenFails;
    out.direction = kernel.front();
    out.detail = "kernel direction of the linear forms";
    return out;
}

// Numeric search for n >= 3: minimize sum of squared forms over the unit
// sphere with projected gradient descent and random restarts.
DirectionCertificate common_zero_numeric(const std::vector<Poly>& forms, int n, std::uint64_t seed) {
    DirectionCertificate out;
    out.exact = false;
    std::vector<const Poly*> nonzero;
    for (const auto& f : forms) {
        if (!f.is_zero()) nonzero.push_back(&f);
    }
    std::vector<std::vector<Poly>> jac;
    for (const auto* f : nonzero) {
        std::vector<Poly> row;
        for (int j = 0; j < n; ++j) row.push_back(f->derivative(j));
        jac.push_back(std::move(row));
    }
    auto objective = [&](const std::vector<double>& x) {
        double s = 0;
        for (const auto* f : nonzero) {
            double v = f->eval(x);
            s += v * v;
        }
        return s;
    };
    auto gradient = [&](const std::vector<double>& x) {
        std::vector<double> g(n, 0.0);
        for (size_t k = 0; k < nonzero.size(); ++k) {
            double v = nonzero[k]->eval(x);
            for (int j = 0; j < n; ++j) g[j] += 2 * v * jac[k][j].eval(x);
        }
        return g;
    };
    auto normalize = [n](std::vector<double>& x) {
        double s = 0;
        for (double v : x) s += v * v;
        s = std::sqrt(s);
        for (auto& v : x) v /= s;
        (void)n;
    };
    Rng rng(seed);
    double best = 1e300;
    std::vector<double> best_x;
    for (int restart = 0; restart < 50; ++restart) {
        std::vector<double> x = rng.point(n, -1.0, 1.0);
        normalize(x);
        double fx = objective(x);
        double step = 0.5;
        for (int it = 0; it < 300; ++it) {
            std::vector<double> g = gradient(x);
            // project onto the tangent space of the sphere
            double dot = 0;
            for (int j = 0; j < n; ++j) dot += g[j] * x[j];
            for (int j = 0; j < n; ++j) g[j] -= dot * x[j];
            double gn = 0;
            for (double v : g) gn += v * v;
            if (gn < 1e-30) break;
            bool improved = false;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> y(n);
                for (int j = 0; j < n; ++j) y[j] = x[j] - step * g[j];
                normalize(y);
                double fy = objective(y);
                if (fy < fx) {
                    x = y;
                    fx = fy;
                    improved = true;
                    break;
                }
                step /= 2;
            }
            if (!improved) break;
            step *= 1.5;
        }
        if (fx < best) {
            best = fx;
            best_x = x;
        }
    }
    if (best < 1e-10) {
        out.verdict = ZeroVerdict::NumericFails;
        out.float_direction = best_x;
        out.detail = "numeric witness direction with residual " + std::to_string(best);
    } else if (best > 1e-6) {
        out.verdict = ZeroVerdict::ProbablyHolds;
        out.detail = "sphere minimum " + std::to_string(best) + " exceeds threshold (heuristic for n >= 3)";
    } else {
        out.verdict = ZeroVerdict::Undetermined;
        out.detail = "sphere minimum in the ambiguous band [1e-10, 1e-6]";
    }
    return out;
}

DirectionCertificate common_zero_dispatch(const std::vector<Poly>& forms, int n, int degree, std::uint64_t seed) {
    if (degree == 1) return common_zero_linear(forms, n);
    if (n == 2) return common_zero_bivariate(forms);
    return common_zero_numeric(forms, n, seed);
}

} // namespace

DirectionCertificate randall_condition_n2(const PolyMap& f) {
    if (f.dim != 2) throw PreconditionError("randall_condition_n2 requires n = 2");
    LeadingFormSet L = leading_forms(f);
    for (int d : L.degrees) {
        if (d < 1) throw PreconditionError("leading-form degrees must be >= 1");
    }
    return common_zero_bivariate(L.leading);
}

DirectionCertificate no_zeros_at_infinity(const PolyMap& f) {
    LeadingFormSet L = leading_forms(f);
    int d = L.algebraic_degree;
    DirectionCertificate out;
    if (d <= 0) {
        out.verdict = ZeroVerdict::ProvenHolds;
        out.exact = true;
        out.detail = "constant map (d = 0): vacuously no zeros at infinity";
        return out;
    }
    return common_zero_dispatch(L.degree_d_forms, f.dim, d, 42);
}

NewtonReport newton_roots(const std::function<std::vector<double>(const std::vector<double>&)>& g,
                          const std::function<std::vector<double>(const std::vector<double>&)>& jacobian_flat,
                          int dim, int starts, double box_lo, double box_hi, double tol,
                          double distinct_tol, std::uint64_t seed) {
    NewtonReport report;
    report.starts = starts;
    report.best_residual = 1e300;
    Rng rng(seed);
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x = rng.point(dim, box_lo, box_hi);
        bool ok = false;
        for (int it = 0; it < 200; ++it) {
            std::vector<double> gx = g(x);
            double res = 0;
            for (double v : gx) res = std::max(res, std::abs(v));
            if (res < tol) {
                ok = true;
                break;
            }
            std::vector<double> Jf = jacobian_flat(x);
            Eigen::MatrixXd J(dim, dim);
            Eigen::VectorXd rhs(dim);
            for (int i = 0; i < dim; ++i) {
                rhs(i) = -gx[i];
                for (int j = 0; j < dim; ++j) J(i, j) = Jf[static_cast<size_t>(i) * dim + j];
            }
            Eigen::VectorXd delta = J.fullPivLu().solve(rhs);
            if (!delta.allFinite()) break;
            // damping: halve until the residual decreases
            double lambda = 1.0;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> y(dim);
                for (int i = 0; i < dim; ++i) y[i] = x[i] + lambda * delta(i);
                std::vector<double> gy = g(y);
                double res_y = 0;
                for (double v : gy) res_y = std::max(res_y, std::abs(v));
                if (res_y < res) {
                    x = y;
                    moved = true;
                    break;
                }
                lambda /= 2;
            }
            if (!moved) break;
        }
        if (!ok) continue;
        ++report.converged;
        std::vector<double> gx = g(x);
        double res = 0;
        for (double v : gx) res = std::max(res, std::abs(v));
        report.best_residual = std::min(report.best_residual, res);
        bool fresh = true;
        for (const auto& r : report.distinct_roots) {
            double dist = 0;
            for (int i = 0; i < dim; ++i) dist = std::max(dist, std::abs(r[i] - x[i]));
            if (dist < distinct_tol) {
                fresh = false;
                break;
            }
        }
        if (fresh) report.distinct_roots.push_back(x);
    }
    return report;
}

namespace {

NewtonReport newton_fixed_points(const PolyMap& f, int starts, double box_lo, double box_hi,
                                 double tol, double distinct_tol, std::uint64_t seed) {
    int n = f.dim;
    PolyMap g = identity_poly_map(n) - f;
    PolyMatrix Jg = jacobian(g);
    auto gf = [&g](const std::vector<double>& x) { return g.eval(x); };
    auto jf = [&Jg, n](const std::vector<double>& x) {
        std::vector<double> out(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) out[static_cast<size_t>(i) * n + j] = Jg.at(i, j).eval(x);
        }
        return out;
    };
    return newton_roots(gf, jf, n, starts, box_lo, box_hi, tol, distinct_tol, seed);
}

bool is_even_positive_certificate(const Poly& p) {
    Rational c = p.constant_term();
    if (c == 0) return false;
    int sgn = c > 0 ? 1 : -1;
    for (const auto& [m, coeff] : p.terms()) {
        if (monomial_degree(m) == 0) continue;
        for (auto e : m) {
            if (e % 2 != 0) return false;
        }
        if ((coeff > 0 ? 1 : -1) != sgn) return false;
    }
    return true;
}

} // namespace

UniqueFixedPointCertificate unique_fixed_point_via_randall(const PolyMap& f, std::uint64_t seed) {
    UniqueFixedPointCertificate out;
    int n = f.dim;

    // hypothesis (i): J(f) has no eigenvalue 1, decided via det(J(f) - I)
    PolyMatrix J = jacobian(f);
    PolyMatrix JmI = J - PolyMatrix::identity(n, n);
    // det through the characteristic coefficients: det(M) = (-1)^n c_n
    std::vector<Poly> cs = char_poly_coeffs(JmI);
    Poly det = n % 2 == 0 ? cs.back() : -cs.back();
    if (!det.is_constant() || det.is_zero()) {
        out.failing_hypothesis =
            "(i) det(J(f) - I) = " + det.to_string() + " is not a nonzero constant";
        return out;
    }

    // hypothesis (ii): leading-form conditions
    LeadingFormSet L = leading_forms(f);
    int d = L.algebraic_degree;
    DirectionCertificate zeros;
    if (d <= 0) {
        out.route = "degree 0: constant map has its value as unique fixed point";
        out.certified = true;
    } else if (d == 1) {
        out.route = "degree 1: affine map with nonsingular I - J has a unique fixed point";
        out.certified = true;
    } else {
        bool all_high = true;
        for (int di : L.degrees) {
            if (di <= 1) all_high = false;
        }
        if (all_high) {
            zeros = common_zero_dispatch(L.leading, n, d, seed);
            if (zeros.verdict == ZeroVerdict::ProvenHolds || zeros.verdict == ZeroVerdict::ProbablyHolds) {
                out.route = "leading forms of degree > 1 without common nontrivial zero";
                out.certified = true;
                out.heuristic = zeros.verdict == ZeroVerdict::ProbablyHolds;
            }
        }
        if (!out.certified) {
            zeros = no_zeros_at_infinity(f);
            if (zeros.verdict == ZeroVerdict::ProvenHolds || zeros.verdict == ZeroVerdict::ProbablyHolds) {
                out.route = "no zeros at infinity (degree-d forms)";
                out.certified = true;
                out.heuristic = zeros.verdict == ZeroVerdict::ProbablyHolds;
            } else {
                out.failing_hypothesis = "(ii) leading forms share a zero: " + zeros.detail;
                return out;
            }
        }
    }

    out.newton = newton_fixed_points(f, 100, -10.0, 10.0, 1e-10, 1e-6, seed);
    return out;
}

DiffeoCertificate randall_diffeo_certificate(const PolyMap& g) {
    DiffeoCertificate out;
    int n = g.dim;
    PolyMatrix J = jacobian(g);
    std::vector<Poly> cs = char_poly_coeffs(J);
    Poly det = n % 2 == 0 ? cs.back() : -cs.back();
    std::string det_reason;
    if (det.is_constant() && !det.is_zero()) {
        det_reason = "det J = " + det.to_string() + " (nonzero constant)";
    } else if (is_even_positive_certificate(det)) {
        det_reason = "det J = " + det.to_string() +
                     " (constant term plus same-signed all-even monomials: bounded away from 0)";
    } else {
        out.reason = "Jacobian determinant " + det.to_string() + " has no nonvanishing certificate";
        return out;
    }
    LeadingFormSet L = leading_forms(g);
    int d = L.algebraic_degree;
    if (d < 1) {
        out.reason = "constant map is not a diffeomorphism";
        return out;
    }
    DirectionCertificate zeros = common_zero_dispatch(L.leading, n, d, 42);
    if (zeros.verdict == ZeroVerdict::ProvenHolds) {
        out.certified = true;
        out.reason = det_reason + "; leading forms share no nontrivial zero (exact)";
    } else if (zeros.verdict == ZeroVerdict::ProbablyHolds) {
        out.certified = true;
        out.heuristic = true;
        out.reason = det_reason + "; " + zeros.detail;
    } else {
        out.reason = "leading forms: " + zeros.detail;
    }
    return out;
}

BoundedImageReport bounded_image_unique_fixed_point_demo(const ExprMap& f, double box_lo, double box_hi,
                                                         int starts, std::uint64_t seed) {
    int n = f.dim;
    ExprMatrix Jf = jacobian(f);
    auto g = [&f](const std::vector<double>& x) {
        std::vector<double> fx = f.eval(x);
        for (int i = 0; i < static_cast<int>(x.size()); ++i) fx[i] = x[i] - fx[i];
        return fx;
    };
    // J(x - f(x)) = I - J(f)
    auto jg = [&Jf, n](const std::vector<double>& x) {
        std::vector<double> J = Jf.eval(x);
        std::vector<double> out(J.size());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double v = -J[static_cast<size_t>(i) * n + j];
                if (i == j) v += 1.0;
                out[static_cast<size_t>(i) * n + j] = v;
            }
        }
        return out;
    };
    NewtonReport nr = newton_roots(g, jg, n, starts, box_lo, box_hi, 1e-10, 1e-6, seed);
    BoundedImageReport report;
    report.starts = nr.starts;
    report.converged = nr.converged;
    report.fixed_points = nr.distinct_roots;
    return report;
}

} // namespace unimap
