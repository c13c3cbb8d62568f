#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "unimap/examples.hpp"
#include "unimap/jacobian.hpp"
#include "unimap/parse.hpp"

using namespace unimap;
namespace ex = unimap::examples;

namespace {

PolyMap poly_map_of(const std::string& text) { return to_poly_map(parse_map(text)); }

} // namespace

TEST_CASE("jacobian of the cosine map is I + sin * constant matrix") {
    ExprMatrix J = jacobian(ex::example1());
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> p = rng.point(2, -3.0, 3.0);
        double s = std::sin(3 * p[0] + 5 * p[1]);
        std::vector<double> expected{1 - 15 * s, -25 * s, 9 * s, 1 + 15 * s};
        std::vector<double> got = J.eval(p);
        for (int k = 0; k < 4; ++k) CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-12));
    }
}

TEST_CASE("jacobian of the identity is the identity matrix") {
    PolyMatrix J = jacobian(identity_poly_map(3));
    CHECK(J == PolyMatrix::identity(3, 3));
}

TEST_CASE("jacobian of the index-3 example matches the displayed matrix entrywise") {
    // with phi = t (so phi(q) = q = y - x^2, phi' = 1):
    // J(f) = I + [[-2x, 1, 0], [2q - 4x^2, 2x, 1], [4xq, -2q, 0]]
    PolyMap f = to_poly_map(ex::example4());
    PolyMatrix J = jacobian(f);
    int n = 3;
    Poly x = Poly::variable(n, 0), y = Poly::variable(n, 1);
    Poly q = y - x * x;
    Poly two = Poly::constant(n, rat(2)), one = Poly::constant(n, rat(1));
    PolyMatrix expected = PolyMatrix::identity(n, n);
    expected.at(0, 0) += -(two * x);
    expected.at(0, 1) += one;
    expected.at(1, 0) += two * q - two * two * x * x;
    expected.at(1, 1) += two * x;
    expected.at(1, 2) += one;
    expected.at(2, 0) += two * two * x * q;
    expected.at(2, 1) += -(two * q);
    CHECK(J == expected);
}

TEST_CASE("characteristic coefficients via Faddeev-LeVerrier") {
    // strictly upper triangular constant matrix: all coefficients vanish
    PolyMatrix upper = PolyMatrix::zero(3, 3);
    upper.at(0, 1) = Poly::constant(3, rat(2));
    upper.at(0, 2) = Poly::constant(3, rat(-1));
    upper.at(1, 2) = Poly::constant(3, rat(5));
    for (const auto& c : char_poly_coeffs(upper)) CHECK(c.is_zero());

    // J(h) for the bootstrap example with phi = -t^2
    PolyMap h3 = perturbation(to_poly_map(ex::example3()));
    for (const auto& c : char_poly_coeffs(jacobian(h3))) CHECK(c.is_zero());

    // h = (y, 0): coefficients (0, 0); h = (x, 0): trace coefficient -1
    PolyMap hy = poly_map_of("dim 2; f1 = x1 + x2; f2 = x2;");
    auto cs = char_poly_coeffs(jacobian(perturbation(hy)));
    CHECK(cs[0].is_zero());
    CHECK(cs[1].is_zero());
    PolyMap hx = poly_map_of("dim 2; f1 = 2*x1; f2 = x2;");
    auto cs2 = char_poly_coeffs(jacobian(perturbation(hx)));
    CHECK(cs2[0] == Poly::constant(2, rat(-1)));
}

TEST_CASE("Faddeev-LeVerrier matches the 2x2 hand formula on random matrices") {
    Rng rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        PolyMatrix M = PolyMatrix::zero(2, 2);
        RatMatrix R(2, 2);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                Rational c = rng.rational(9, 4);
                R.at(i, j) = c;
                M.at(i, j) = Poly::constant(2, c);
            }
        }
        auto cs = char_poly_coeffs(M);
        // char poly = lambda^2 - tr lambda + det
        CHECK(cs[0] == Poly::constant(2, -(R.at(0, 0) + R.at(1, 1))));
        CHECK(cs[1] == Poly::constant(2, R.det()));
    }
}

TEST_CASE("exact nilpotence certification") {
    // triangular perturbation: proven nilpotent
    auto v2 = is_nilpotent_exact(perturbation(ex::example2()));
    CHECK(v2.status == NilpotenceStatus::ProvenNilpotent);

    // h(x) = x in R^1: proven not, witness at the origin
    PolyMap hid = identity_poly_map(1);
    auto v = is_nilpotent_exact(hid);
    CHECK(v.status == NilpotenceStatus::ProvenNot);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == RatVec{rat(0)});
    CHECK(*v.witness_value != 0);

    // index-3 example: nilpotent with J(h)^3 = 0 but J(h)^2 != 0
    PolyMap h4 = perturbation(to_poly_map(ex::example4()));
    CHECK(is_nilpotent_exact(h4).status == NilpotenceStatus::ProvenNilpotent);
    PolyMatrix J4 = jacobian(h4);
    CHECK_FALSE(matrix_power_zero(J4, 2));
    CHECK(matrix_power_zero(J4, 3));
}

TEST_CASE("unipotence = nilpotence of the perturbation") {
    CHECK(is_unipotent(to_poly_map(ex::example3())).status == NilpotenceStatus::ProvenNilpotent);

    PolyMap doubling = poly_map_of("dim 1; f1 = 2*x1;");
    CHECK(is_unipotent(doubling).status == NilpotenceStatus::ProvenNot);

    // cubic-linear map over a nilpotent A stays unipotent
    CHECK(is_unipotent(ex::cubic_linear_det1()).status == NilpotenceStatus::ProvenNilpotent);
}

TEST_CASE("sampled nilpotence verdicts") {
    auto v1 = is_nilpotent_sampled(perturbation(ex::example1()), 500, 1e-9, -10.0, 10.0, 42);
    CHECK(v1.status == NilpotenceStatus::ProbablyNilpotent);

    // trace-free but not nilpotent: det J(h) = -4xy
    ExprMap h = parse_map("dim 2; f1 = x2^2; f2 = x1^2;");
    auto v2 = is_nilpotent_sampled(h, 500, 1e-9, -10.0, 10.0, 42);
    CHECK(v2.status == NilpotenceStatus::ProvenNot);
    CHECK(v2.float_witness.has_value());

    ExprMap zero1 = parse_map("dim 1; f1 = 0;");
    CHECK(is_nilpotent_sampled(zero1, 100, 1e-9).status == NilpotenceStatus::ProbablyNilpotent);
}

TEST_CASE("matrix powers of the planar nilpotent factor") {
    // phi = t surrogate for the cosine map: N = [[15, 25], [-9, -15]], N^2 = 0
    PolyMap planar = poly_map_of(
        "dim 2; phi = t; f1 = x1 + 5*phi(3*x1 + 5*x2); f2 = x2 - 3*phi(3*x1 + 5*x2);");
    PolyMatrix N = jacobian(perturbation(planar));
    CHECK_FALSE(N.is_zero());
    CHECK(matrix_power_zero(N, 2));
    CHECK(matrix_power_zero(PolyMatrix::zero(2, 2), 1));
}

TEST_CASE("Cayley-Hamilton consistency on proven-nilpotent fixtures") {
    std::vector<PolyMap> hs{
        perturbation(ex::example2()),
        perturbation(to_poly_map(ex::example3())),
        perturbation(to_poly_map(ex::example4())),
        to_poly_map(ex::example5_h()),
        perturbation(ex::cubic_linear_det1()),
    };
    for (const auto& h : hs) {
        REQUIRE(is_nilpotent_exact(h).status == NilpotenceStatus::ProvenNilpotent);
        CHECK(matrix_power_zero(jacobian(h), h.dim));
    }
}

TEST_CASE("sampled and exact verdicts never contradict on polynomial fixtures") {
    std::vector<PolyMap> maps{
        perturbation(ex::example2()),
        perturbation(to_poly_map(ex::example3())),
        to_poly_map(ex::example5_h()),
        perturbation(poly_map_of("dim 2; f1 = 2*x1; f2 = x2;")),
        to_poly_map(parse_map("dim 2; f1 = x2^2; f2 = x1^2;")),
    };
    for (const auto& h : maps) {
        auto exact = is_nilpotent_exact(h);
        auto sampled = is_nilpotent_sampled(to_expr_map(h), 200, 1e-9, -3.0, 3.0, 42);
        if (sampled.status == NilpotenceStatus::ProbablyNilpotent) {
            CHECK(exact.status == NilpotenceStatus::ProvenNilpotent);
        }
        if (exact.status == NilpotenceStatus::ProvenNilpotent) {
            CHECK(sampled.status == NilpotenceStatus::ProbablyNilpotent);
        }
    }
}

TEST_CASE("integer witness search is deterministic") {
    Poly p = Poly::variable(2, 0); // x1
    RatVec w = nonzero_witness(p);
    CHECK(w == RatVec{rat(-1), rat(-1)}); // first nonzero point in max-norm order
    Poly c = Poly::constant(2, rat(5));
    CHECK(nonzero_witness(c) == RatVec{rat(0), rat(0)});
}

TEST_CASE("the reference determinant identity det J = 1 + 9x^2y^2") {
    auto cs = char_poly_coeffs(jacobian(ex::randall_map()));
    Poly expected(2);
    expected.set_coefficient(Monomial{2, 2}, rat(9));
    expected.set_coefficient(Monomial{0, 0}, rat(1));
    CHECK(cs.back() == expected); // det = c_2 for n = 2
}
