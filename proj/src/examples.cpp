#include "unimap/examples.hpp"

#include <cmath>

#include "unimap/dynamics.hpp"
#include "unimap/errors.hpp"
#include "unimap/infinity.hpp"
#include "unimap/inversion.hpp"
#include "unimap/jacobian.hpp"
#include "unimap/parse.hpp"
#include "unimap/planar.hpp"
#include "unimap/rng.hpp"
#include "unimap/triangular.hpp"

namespace unimap::examples {

ExprMap example1() {
    return parse_map("dim 2; f1 = x1 + 5*cos(3*x1 + 5*x2); f2 = x2 - 3*cos(3*x1 + 5*x2);");
}

ExprMap example1_inverse() {
    return parse_map("dim 2; f1 = x1 - 5*cos(3*x1 + 5*x2); f2 = x2 + 3*cos(3*x1 + 5*x2);");
}

PolyMap example2() {
    return to_poly_map(parse_map("dim 4;"
                                 "f1 = x1 + x2*x3 - x4^2 + x2;"
                                 "f2 = x2 + x3^2*x4 + x3;"
                                 "f3 = x3 + x4^2 - 2*x4;"
                                 "f4 = x4 + 7/2;"));
}

PolyMap example2_inverse() {
    // peel the triangular structure from the last coordinate up:
    // w = v - d, z = u - c(w), y = t - b(z, w), x = s - a(y, z, w)
    int n = 4;
    Poly s = Poly::variable(n, 0), t = Poly::variable(n, 1);
    Poly u = Poly::variable(n, 2), v = Poly::variable(n, 3);
    Poly w = v - Poly::constant(n, rat(7, 2));
    Poly z = u - (w * w - w * Rational(2));
    Poly y = t - (z * z * w + z);
    Poly x = s - (y * z - w * w + y);
    PolyMap inv;
    inv.dim = n;
    inv.components = {x, y, z, w};
    return inv;
}

ExprMap example3(const std::string& phi) {
    return parse_map("dim 3; phi = " + phi +
                     "; f1 = x1 + x3*phi(x1 + x3*x2); f2 = x2 - phi(x1 + x3*x2); f3 = x3;");
}

ExprMap example3_inverse(const std::string& phi) {
    return parse_map("dim 3; phi = " + phi +
                     "; f1 = x1 - x3*phi(x1 + x2*x3); f2 = x2 + phi(x1 + x2*x3); f3 = x3;");
}

NewClassRecipe example3_recipe(const std::string& phi) {
    // base phi(x2) lifted by M(z) with second row (1, z): the adjoint route
    // turns it into (z*phi(x + z*y), -phi(x + z*y), 0)
    return parse_recipe("dim 3; phi = " + phi +
                        "; base phi(x2);"
                        "level 2 { M = [ 1, 0 ; 1, x3 ]; C = [ 0, 0 ]; }");
}

ExprMap example4(const std::string& phi) {
    return parse_map("dim 3; phi = " + phi +
                     "; f1 = x1 + phi(x2 - x1^2);"
                     "  f2 = x2 + x3 + 2*x1*phi(x2 - x1^2);"
                     "  f3 = x3 - phi(x2 - x1^2)^2;");
}

ExprMap example4_inverse(const std::string& phi) {
    // with a = phi(v - u^2 - w): (u - a, v - w - 2ua + a^2, w + a^2)
    return parse_map("dim 3; phi = " + phi +
                     "; f1 = x1 - phi(x2 - x1^2 - x3);"
                     "  f2 = x2 - x3 - 2*x1*phi(x2 - x1^2 - x3) + phi(x2 - x1^2 - x3)^2;"
                     "  f3 = x3 + phi(x2 - x1^2 - x3)^2;");
}

ExprMap example5_h(const std::string& phi) {
    return parse_map("dim 3; phi = " + phi +
                     "; f1 = phi(x2 - x1^2);"
                     "  f2 = x3 + 2*x1*phi(x2 - x1^2);"
                     "  f3 = -phi(x2 - x1^2)^2;");
}

PolyMap randall_map() {
    return to_poly_map(parse_map("dim 2; f1 = x1 + x2^3; f2 = x2 - x1^3;"));
}

PolyMap cubic_linear_det1() {
    return make_cubic_linear({{Rational(1), Rational(1)}, {Rational(-1), Rational(-1)}});
}

bool VerifyReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

namespace {

void push(VerifyReport& r, const std::string& name, bool pass, const std::string& detail = "") {
    r.checks.push_back({name, pass, detail});
}

double max_err(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

VerifyReport verify1(std::uint64_t seed) {
    VerifyReport r;
    r.example = 1;
    ExprMap f = example1();
    ExprMap g = example1_inverse();

    auto verdict = is_nilpotent_sampled(perturbation(f), 500, 1e-9, -10.0, 10.0, seed);
    push(r, "sampled unipotence (500 points, tol 1e-9)",
         verdict.status == NilpotenceStatus::ProbablyNilpotent, verdict.detail);

    Rng rng(seed);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        std::vector<double> p = rng.point(2, -10.0, 10.0);
        worst = std::max(worst, max_err(g.eval(f.eval(p)), p));
        worst = std::max(worst, max_err(f.eval(g.eval(p)), p));
    }
    push(r, "inverse round trip at 100 points (err < 1e-9)", worst < 1e-9,
         "max abs error " + std::to_string(worst));

    double worst_cf = 0;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> z = rng.point(2, -10.0, 10.0);
        PlanarInverse pi = planar_inverse_closed_forms(f, z, 1e-9);
        worst_cf = std::max({worst_cf, pi.disagreement, pi.residual});
        if (pi.status != InversionStatus::Ok) worst_cf = 1;
    }
    push(r, "universal closed-form inverses agree", worst_cf < 1e-9,
         "max disagreement/residual " + std::to_string(worst_cf));
    return r;
}

VerifyReport verify2(std::uint64_t seed) {
    VerifyReport r;
    r.example = 2;
    PolyMap f = example2();
    PolyMap h = perturbation(f);

    auto verdict = is_nilpotent_exact(h);
    push(r, "exact nilpotence of J(h)", verdict.status == NilpotenceStatus::ProvenNilpotent, verdict.detail);

    auto cert = strongly_nilpotent_generic(h);
    push(r, "strong nilpotence (generic points)", cert.strongly_nilpotent, cert.detail);

    bool s_is_identity = false;
    try {
        TriangularizedMap tm = triangularize_map(f);
        s_is_identity = tm.S == RatMatrix::identity(4);
    } catch (const Error&) {
    }
    push(r, "triangularize returns S = identity", s_is_identity);

    PolyMap paper_inv = example2_inverse();
    ExprMap f_expr = to_expr_map(f);
    Rng rng(seed);
    bool all_match = true;
    for (int i = 0; i < 50 && all_match; ++i) {
        RatVec y = rng.rational_point(4, 5, 3);
        InversionResult res = invert_by_power_exact(f_expr, y, 4);
        all_match = res.status == InversionStatus::Ok && res.exact_point && *res.exact_point == paper_inv.eval(y);
    }
    push(r, "power inverse (m=4) equals the displayed inverse at 50 rational points", all_match);
    return r;
}

VerifyReport verify3(std::uint64_t seed) {
    VerifyReport r;
    r.example = 3;
    ExprMap f = example3();
    PolyMap fp = to_poly_map(f);

    auto verdict = is_unipotent(fp);
    push(r, "exact unipotence", verdict.status == NilpotenceStatus::ProvenNilpotent, verdict.detail);

    PolyMap h = perturbation(fp);
    PolyMap h3 = compose_power(h, 3);
    bool zero3 = h3.is_constant();
    for (const auto& c : h3.components) zero3 = zero3 && c.is_zero();
    push(r, "h^(o3) is the constant map (0,0,0)", zero3);

    PolyMap gp = to_poly_map(example3_inverse());
    push(r, "displayed inverse composes to the identity (symbolic)",
         compose(fp, gp) == identity_poly_map(3) && compose(gp, fp) == identity_poly_map(3));

    Rng rng(seed);
    bool all_match = true;
    for (int i = 0; i < 50 && all_match; ++i) {
        RatVec x = rng.rational_point(3, 4, 2);
        RatVec y = fp.eval(x);
        InversionResult res = invert_by_power_exact(f, y, 3);
        all_match = res.status == InversionStatus::Ok && res.exact_point && *res.exact_point == x;
    }
    push(r, "inverse round trip exact at 50 rational points", all_match);

    double res_analytic = verify_analytic_orbit(f, {0.0, 0.5, 1.0});
    push(r, "analytic escape orbit residual < 1e-9", res_analytic < 1e-9, std::to_string(res_analytic));

    Orbit orbit = integrate_flow(f, {18.0, -12.0, 1.0}, 0.0, 2.0, 20000);
    std::vector<double> exact{18 * std::exp(1.0), -12 * std::exp(2.0), std::exp(-1.0)};
    const std::vector<double>& at1 = orbit.points[10000];
    double rel = 0;
    for (int i = 0; i < 3; ++i) rel = std::max(rel, std::abs(at1[i] - exact[i]) / std::abs(exact[i]));
    push(r, "RK4 orbit matches (18e^t, -12e^{2t}, e^{-t}) at t=1 (rel err < 1e-6)", rel < 1e-6,
         std::to_string(rel));

    SpectralReport spec = spectral_report(negate_map(f), 200, -0.1, 0.1, std::complex<double>(-1.0, 0.0), seed);
    push(r, "J(-f) eigenvalues within 1e-8 of -1 at 200 samples",
         spec.failures == 0 && spec.max_deviation_from_target < 1e-8,
         "max deviation " + std::to_string(spec.max_deviation_from_target));
    return r;
}

VerifyReport verify4(std::uint64_t seed) {
    (void)seed;
    VerifyReport r;
    r.example = 4;
    ExprMap f = example4();
    PolyMap fp = to_poly_map(f);
    PolyMap h = perturbation(fp);
    PolyMatrix J = jacobian(h);

    push(r, "J(h)^2 != 0 and J(h)^3 = 0 exactly", !matrix_power_zero(J, 2) && matrix_power_zero(J, 3));

    PolyMap inv = to_poly_map(example4_inverse());
    push(r, "closed-form inverse verifies symbolically",
         compose(fp, inv) == identity_poly_map(3) && compose(inv, fp) == identity_poly_map(3));

    {
        PolyTermCapGuard guard(200'000);
        PowerConstancy pc = symbolic_power_constancy(h);
        push(r, "composition powers: no constancy within cap", !pc.power.has_value(),
             pc.capped ? "resource cap reached (not a disproof)" : "cap " + std::to_string(pc.cap));
    }

    auto cert = strongly_nilpotent_generic(h);
    bool witness_ok = false;
    if (!cert.strongly_nilpotent && cert.witness_points) {
        RatMatrix prod = J.eval((*cert.witness_points)[0]);
        for (size_t i = 1; i < cert.witness_points->size(); ++i) {
            prod = prod * J.eval((*cert.witness_points)[i]);
        }
        witness_ok = !prod.is_zero();
    }
    push(r, "not strongly nilpotent, with a verified witness tuple", witness_ok);
    return r;
}

VerifyReport verify5(std::uint64_t seed) {
    (void)seed;
    VerifyReport r;
    r.example = 5;
    ExprMap h = example5_h();
    PolyMap hp = to_poly_map(h);

    RatVec zero{Rational(0), Rational(0), Rational(0)};
    push(r, "origin is fixed", hp.eval(zero) == zero);

    Orbit orbit = iterate_map(h, {-1.0, 1.0, -1.0}, 30);
    auto period = detect_period(orbit, 1e-8);
    bool cycle_ok = period && *period == 3;
    if (cycle_ok) {
        cycle_ok = max_err(orbit.points[1], {0.0, -1.0, 0.0}) < 1e-12 &&
                   max_err(orbit.points[2], {-1.0, 0.0, -1.0}) < 1e-12 &&
                   max_err(orbit.points[3], {-1.0, 1.0, -1.0}) < 1e-12;
    }
    push(r, "period-3 orbit (-1,1,-1) -> (0,-1,0) -> (-1,0,-1) detected", cycle_ok,
         period ? "period " + std::to_string(*period) : "no period detected");

    PolyMap h3 = compose_power(hp, 3);
    std::vector<RatVec> pts{
        zero,
        {Rational(-1), Rational(1), Rational(-1)},
        {Rational(0), Rational(-1), Rational(0)},
        {Rational(-1), Rational(0), Rational(-1)},
    };
    bool fixes = true;
    for (const auto& p : pts) fixes = fixes && h3.eval(p) == p;
    push(r, "h^(o3) fixes all four listed points exactly", fixes);
    return r;
}

} // namespace

VerifyReport verify_example(int k, std::uint64_t seed) {
    switch (k) {
        case 1: return verify1(seed);
        case 2: return verify2(seed);
        case 3: return verify3(seed);
        case 4: return verify4(seed);
        case 5: return verify5(seed);
        default: throw PreconditionError("examples are numbered 1..5");
    }
}

} // namespace unimap::examples
