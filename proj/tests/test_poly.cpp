#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/poly.hpp"
#include "unimap/rational.hpp"
#include "unimap/rng.hpp"

using namespace unimap;
using unimap::testing::random_poly;

TEST_CASE("rationals are canonical") {
    CHECK(to_string(rat(2, 4)) == "1/2");
    CHECK(to_string(rat(-2, 4)) == "-1/2");
    CHECK(to_string(rat(3, -6)) == "-1/2"); // denominator made positive
    CHECK(to_string(rat(6, 3)) == "2");     // integers render without /1
    CHECK(rational_from_string("7/21") == rat(1, 3));
    CHECK(rational_pow(rat(-2, 3), 3) == rat(-8, 27));
}

TEST_CASE("poly construction keeps canonical form") {
    Poly p(2);
    p.set_coefficient(Monomial{1, 0}, rat(1));
    p.set_coefficient(Monomial{0, 2}, rat(3));
    p.set_coefficient(Monomial{0, 2}, rat(0)); // erases
    CHECK(p.term_count() == 1);
    CHECK(p.total_degree() == 1);
    Poly q = p - p;
    CHECK(q.is_zero());
    CHECK(q.total_degree() == -1);
}

TEST_CASE("poly arithmetic is a commutative ring (randomized distributivity)") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int nv = static_cast<int>(rng.uniform_int(1, 3));
        Poly p = random_poly(rng, nv, 3, 4);
        Poly q = random_poly(rng, nv, 3, 4);
        Poly r = random_poly(rng, nv, 3, 4);
        CHECK((p + q) * r == p * r + q * r);
        CHECK(p * q == q * p);
        CHECK(p + q == q + p);
        CHECK((p * q) * r == p * (q * r));
    }
}

TEST_CASE("derivative and evaluation agree with hand values") {
    // d/dx (x^2 y + 3x) = 2xy + 3
    Poly p(2);
    p.set_coefficient(Monomial{2, 1}, rat(1));
    p.set_coefficient(Monomial{1, 0}, rat(3));
    Poly d = p.derivative(0);
    Poly expected(2);
    expected.set_coefficient(Monomial{1, 1}, rat(2));
    expected.set_coefficient(Monomial{0, 0}, rat(3));
    CHECK(d == expected);
    CHECK(p.eval(RatVec{rat(1, 2), rat(4)}) == rat(5, 2));
}

TEST_CASE("substitution composes exactly") {
    // p(x, y) = x^2 + y; substitute x -> t+1, y -> t^2 (1 variable)
    Poly p(2);
    p.set_coefficient(Monomial{2, 0}, rat(1));
    p.set_coefficient(Monomial{0, 1}, rat(1));
    Poly t = Poly::variable(1, 0);
    Poly s = p.substitute({t + Poly::constant(1, rat(1)), t * t});
    // (t+1)^2 + t^2 = 2t^2 + 2t + 1
    Poly expected(1);
    expected.set_coefficient(Monomial{2}, rat(2));
    expected.set_coefficient(Monomial{1}, rat(2));
    expected.set_coefficient(Monomial{0}, rat(1));
    CHECK(s == expected);
}

TEST_CASE("graded-lex printing puts the top slice first") {
    Poly p(2);
    p.set_coefficient(Monomial{0, 0}, rat(1));
    p.set_coefficient(Monomial{1, 1}, rat(-2));
    CHECK(p.to_string() == "-2*x1*x2 + 1");
}

TEST_CASE("term cap raises ResourceLimit") {
    PolyTermCapGuard guard(50);
    Rng rng(3);
    Poly dense = random_poly(rng, 3, 4, 30, 3);
    CHECK_THROWS_AS([&] {
        Poly acc = Poly::constant(3, rat(1));
        for (int i = 0; i < 6; ++i) acc = acc * dense;
        return acc;
    }(), ResourceLimit);
}

TEST_CASE("univariate division, gcd") {
    // (t^2 - 1) = (t - 1)(t + 1)
    Poly t = Poly::variable(1, 0);
    Poly one = Poly::constant(1, rat(1));
    Poly p = t * t - one;
    auto [q, r] = uni_divmod(p, t - one);
    CHECK(r.is_zero());
    CHECK(q == t + one);
    Poly g = uni_gcd(p, t - one);
    CHECK(g == t - one); // monic
    CHECK(uni_gcd(p, t * t + one).is_constant());
}

TEST_CASE("homogeneous slices") {
    Poly p(2);
    p.set_coefficient(Monomial{3, 0}, rat(1));
    p.set_coefficient(Monomial{1, 1}, rat(2));
    p.set_coefficient(Monomial{0, 0}, rat(-5));
    Poly top = p.homogeneous_part(3);
    CHECK(top.term_count() == 1);
    CHECK(top.coefficient(Monomial{3, 0}) == rat(1));
    CHECK(p.homogeneous_part(1).is_zero());
}
