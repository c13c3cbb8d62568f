#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/examples.hpp"
#include "unimap/jacobian.hpp"
#include "unimap/parse.hpp"

using namespace unimap;
namespace ex = unimap::examples;

TEST_CASE("parse the reference maps") {
    ExprMap f = parse_map("dim 2; f1 = x1 + 5*cos(3*x1+5*x2); f2 = x2 - 3*cos(3*x1+5*x2)");
    CHECK(f.dim == 2);
    CHECK(uses_var(f.components[0], 1));

    ExprMap id1 = parse_map("dim 1; f1 = x1");
    CHECK(id1.components[0].kind() == ExprKind::Var);

    ExprMap randall = parse_map("dim 2; f1 = x1 + x2^3; f2 = x2 - x1^3");
    CHECK(to_poly_map(randall) == ex::randall_map());
}

TEST_CASE("parse errors carry line and column") {
    CHECK_THROWS_AS(parse_map("dim 2; f1 = x1 +; f2 = x2;"), ParseError);
    try {
        parse_map("dim 2;\nf1 = x3;\nf2 = x2;");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("exceeds dimension") != std::string::npos);
    }
    // 't' outside the phi definition
    CHECK_THROWS_AS(parse_map("dim 1; f1 = t;"), ParseError);
    // phi usable without a definition at parse time
    CHECK_NOTHROW(parse_map("dim 1; f1 = phi(x1);"));
    CHECK_THROWS_AS(parse_map("dim 2; f1 = x1;"), ParseError);          // missing f2
    CHECK_THROWS_AS(parse_map("dim 1; f1 = x1; f1 = x1;"), ParseError); // duplicate
    // one placeholder definition per map
    CHECK_THROWS_AS(parse_map("dim 1; phi = t; phi = t^2; f1 = phi(x1);"), ParseError);
}

TEST_CASE("parse-render round trip is the identity on fixtures") {
    std::vector<ExprMap> fixtures{
        ex::example1(),          ex::example1_inverse(), ex::example3(),
        ex::example3_inverse(),  ex::example4(),         ex::example4_inverse(),
        ex::example5_h(),        to_expr_map(ex::example2()),
        to_expr_map(ex::randall_map()),
        parse_map("dim 2; f1 = -x1*x2 - 3/2; f2 = (x1 - x2)^2 - exp(x2);"),
        parse_map("dim 1; phi = -t^2 + 1/3*t; f1 = phi(x1 - 1);"),
    };
    for (const auto& f : fixtures) {
        ExprMap g = parse_map(render_map(f));
        CHECK(structurally_equal(f, g));
    }
}

TEST_CASE("evaluation: exact and float paths") {
    ExprMap f1 = ex::example1();
    auto v = f1.eval(std::vector<double>{0.0, 0.0});
    CHECK(v[0] == doctest::Approx(5.0)); // cos(0) = 1
    CHECK(v[1] == doctest::Approx(-3.0));

    ExprMap id2 = parse_map("dim 2; f1 = x1; f2 = x2;");
    RatVec p{rat(3, 2), rat(-7)};
    CHECK(id2.eval(p) == p);

    // the period-3 fixture: h(-1, 1, -1) = (0, -1, 0) exactly
    ExprMap h5 = ex::example5_h();
    RatVec q{rat(-1), rat(1), rat(-1)};
    RatVec img = h5.eval(q);
    CHECK(img == RatVec{rat(0), rat(-1), rat(0)});

    // transcendental nodes refuse the exact path
    CHECK_THROWS_AS(f1.eval(RatVec{rat(0), rat(0)}), InexactRequired);
    // phi without a definition refuses evaluation
    ExprMap orphan = parse_map("dim 1; f1 = phi(x1);");
    CHECK_THROWS_AS(orphan.eval(std::vector<double>{1.0}), MissingPhi);
}

TEST_CASE("differentiate: reference derivative of the cosine map") {
    // d/dx [x + 5 cos(3x+5y)] = 1 - 15 sin(3x+5y)
    ExprMap f = ex::example1();
    Expr d = differentiate(f.components[0], 0);
    for (double x : {0.0, 0.3, -1.7}) {
        for (double y : {0.0, 2.1}) {
            double expected = 1 - 15 * std::sin(3 * x + 5 * y);
            CHECK(eval_double(d, {x, y}) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    CHECK(differentiate(Expr::variable(0), 1).is_zero_literal());
}

TEST_CASE("differentiate agrees with central finite differences") {
    // ((x + z y)^2 checked at 20 random points, rel err < 1e-6
    Expr e = parse_expr("(x1 + x3*x2)^2", 3);
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> p = rng.point(3, -2.0, 2.0);
        for (int var = 0; var < 3; ++var) {
            Expr d = differentiate(e, var);
            double exact = eval_double(d, p);
            double fd = testing::central_difference(
                [&e](const std::vector<double>& q) { return eval_double(e, q); }, p, var);
            CHECK(std::abs(fd - exact) / std::max(1.0, std::abs(exact)) < 1e-6);
        }
    }
}

TEST_CASE("finite differences validate every fixture map") {
    std::vector<ExprMap> fixtures{ex::example1(), ex::example3(), ex::example4(), ex::example5_h(),
                                  to_expr_map(ex::example2()), to_expr_map(ex::randall_map())};
    Rng rng(17);
    for (const auto& f : fixtures) {
        ExprMatrix J = jacobian(f);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> p = rng.point(f.dim, -1.5, 1.5);
            std::vector<double> sym = J.eval(p);
            for (int i = 0; i < f.dim; ++i) {
                for (int j = 0; j < f.dim; ++j) {
                    double fd = testing::central_difference(
                        [&](const std::vector<double>& q) { return f.eval(q)[i]; }, p, j);
                    double exact = sym[static_cast<size_t>(i) * f.dim + j];
                    CHECK(std::abs(fd - exact) / std::max(1.0, std::abs(exact)) < 1e-6);
                }
            }
        }
    }
}

TEST_CASE("compose: identity, powers, inverse pairs") {
    ExprMap f = ex::example1();
    ExprMap id2 = identity_expr_map(2);
    CHECK(structurally_equal(compose(id2, f), f));

    // h of the 3-variable bootstrap example with phi = -t^2: h o h o h = 0
    PolyMap h = perturbation(to_poly_map(ex::example3()));
    PolyMap h3 = compose_power(h, 3);
    CHECK(h3 == zero_poly_map(3));

    // f o g = id at 100 random points for the displayed inverse
    ExprMap g = ex::example1_inverse();
    ExprMap fg = compose(f, g);
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> p = rng.point(2, -10.0, 10.0);
        std::vector<double> q = fg.eval(p);
        CHECK(std::abs(q[0] - p[0]) < 1e-9);
        CHECK(std::abs(q[1] - p[1]) < 1e-9);
    }
    CHECK_THROWS_AS(compose(f, parse_map("dim 1; f1 = x1;")), DimensionMismatch);
}

TEST_CASE("compose is associative on polynomial maps") {
    Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        int n = static_cast<int>(rng.uniform_int(1, 3));
        PolyMap a = zero_poly_map(n), b = zero_poly_map(n), c = zero_poly_map(n);
        for (int i = 0; i < n; ++i) {
            a.components[i] = testing::random_poly(rng, n, 2, 3);
            b.components[i] = testing::random_poly(rng, n, 2, 3);
            c.components[i] = testing::random_poly(rng, n, 2, 2);
        }
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("to_poly: conversions and refusals") {
    // the bootstrap map with phi = -t^2 becomes a polynomial map
    PolyMap p3 = to_poly_map(ex::example3());
    // f1 = x - z(x+zy)^2 has total degree 5; f2 = y + (x+zy)^2 degree 4
    CHECK(p3.components[0].total_degree() == 5);
    CHECK(p3.components[1].total_degree() == 4);

    PolyMap c = to_poly_map(parse_map("dim 2; f1 = 3/2; f2 = -1;"));
    CHECK(c.is_constant());

    try {
        to_poly_map(ex::example1());
        FAIL("expected NotPolynomial");
    } catch (const NotPolynomial& e) {
        CHECK(std::string(e.what()).find("cos") != std::string::npos);
    }
}

TEST_CASE("cubic-linear constructor") {
    // A = 0 gives the identity
    CHECK(make_cubic_linear({{rat(0)}}) == identity_poly_map(1));

    // n = 1, A = [1]: f = x + x^3 with det J = 1 + 3x^2
    PolyMap f1 = make_cubic_linear({{rat(1)}});
    Poly detJ = jacobian(f1).at(0, 0);
    Poly expected(1);
    expected.set_coefficient(Monomial{2}, rat(3));
    expected.set_coefficient(Monomial{0}, rat(1));
    CHECK(detJ == expected);

    // A = [[1,1],[-1,-1]] has det A = 0 and det J(f) = 1 identically
    PolyMap f2 = ex::cubic_linear_det1();
    auto cs = char_poly_coeffs(jacobian(f2));
    // det(J) = c_2 for n = 2
    CHECK(cs.back() == Poly::constant(2, rat(1)));
}
