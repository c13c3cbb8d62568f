#include <doctest.h>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/examples.hpp"
#include "unimap/parse.hpp"
#include "unimap/triangular.hpp"

using namespace unimap;
namespace ex = unimap::examples;

namespace {

PolyMap poly_map_of(const std::string& text) { return to_poly_map(parse_map(text)); }

// random invertible rational matrix: unit lower times unit upper triangular
RatMatrix random_invertible(Rng& rng, int n) {
    RatMatrix L = RatMatrix::identity(n), U = RatMatrix::identity(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) L.at(i, j) = rng.rational(3, 2);
        for (int j = i + 1; j < n; ++j) U.at(i, j) = rng.rational(3, 2);
    }
    return L * U;
}

RatMatrix random_strictly_upper(Rng& rng, int n) {
    RatMatrix G(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) G.at(i, j) = rng.rational(4, 2);
    }
    return G;
}

} // namespace

TEST_CASE("coefficient family of reference perturbations") {
    // linear triangular instance: constant strictly-upper generators
    PolyMap lin = perturbation(poly_map_of("dim 4; f1 = x1 + x2; f2 = x2 + x3; f3 = x3 + x4; f4 = x4 + 2;"));
    MatrixFamily F = coefficient_family(lin);
    CHECK(F.n == 4);
    CHECK_FALSE(F.generators.empty());
    for (const auto& g : F.generators) CHECK(g.is_strictly_upper_triangular());

    // h = (y^2, 0): J(h) = [[0, 2y], [0, 0]] -> single generator [[0,2],[0,0]]
    PolyMap h = perturbation(poly_map_of("dim 2; f1 = x1 + x2^2; f2 = x2;"));
    MatrixFamily Fh = coefficient_family(h);
    REQUIRE(Fh.generators.size() == 1);
    RatMatrix expected(2, 2);
    expected.at(0, 1) = rat(2);
    CHECK(Fh.generators[0] == expected);

    // zero perturbation: explicitly the zero family
    CHECK(coefficient_family(zero_poly_map(3)).generators.empty());
}

TEST_CASE("generic-point strong nilpotence") {
    CHECK(strongly_nilpotent_generic(perturbation(ex::example2())).strongly_nilpotent);

    // h(x,y) = (y^2, 0): J(h)(a) J(h)(b) = 0 by hand
    PolyMap h = perturbation(poly_map_of("dim 2; f1 = x1 + x2^2; f2 = x2;"));
    CHECK(strongly_nilpotent_generic(h).strongly_nilpotent);

    // index-3 example is nilpotent but not strongly nilpotent
    PolyMap h4 = perturbation(to_poly_map(ex::example4()));
    auto cert = strongly_nilpotent_generic(h4);
    CHECK_FALSE(cert.strongly_nilpotent);
    REQUIRE(cert.witness_points.has_value());
    PolyMatrix J = jacobian(h4);
    RatMatrix prod = J.eval((*cert.witness_points)[0]);
    for (size_t i = 1; i < cert.witness_points->size(); ++i) prod = prod * J.eval((*cert.witness_points)[i]);
    CHECK_FALSE(prod.is_zero());
}

TEST_CASE("sampled strong nilpotence") {
    auto ok = strongly_nilpotent_sampled(to_expr_map(perturbation(ex::example2())), 200, 1e-8);
    CHECK(ok.status == SampledStrength::ProbablyStronglyNilpotent);

    auto bad = strongly_nilpotent_sampled(perturbation(ex::example4()), 200, 1e-8);
    CHECK(bad.status == SampledStrength::NotStronglyNilpotent);
    CHECK(bad.witness_tuple.has_value());

    auto zero = strongly_nilpotent_sampled(to_expr_map(zero_poly_map(2)), 50, 1e-8);
    CHECK(zero.status == SampledStrength::ProbablyStronglyNilpotent);
}

TEST_CASE("triangularize_family on already-triangular families") {
    MatrixFamily single{2, {}};
    RatMatrix g(2, 2);
    g.at(0, 1) = rat(1);
    single.generators.push_back(g);
    CHECK(triangularize_family(single).S == RatMatrix::identity(2));

    MatrixFamily F = coefficient_family(perturbation(ex::example2()));
    CHECK(triangularize_family(F).S == RatMatrix::identity(4));
}

TEST_CASE("construct-then-recover round trip on conjugated families") {
    Rng rng(31);
    for (int trial = 0; trial < 12; ++trial) {
        int n = static_cast<int>(rng.uniform_int(2, 4));
        int count = static_cast<int>(rng.uniform_int(1, 3));
        RatMatrix P = random_invertible(rng, n);
        RatMatrix P_inv = P.inverse();
        MatrixFamily F{n, {}};
        for (int k = 0; k < count; ++k) F.generators.push_back(P_inv * random_strictly_upper(rng, n) * P);
        TriangularizingBasis basis = triangularize_family(F); // verifies exactly before returning
        CHECK(basis.S.det() != 0);
        for (const auto& g : F.generators) {
            CHECK((basis.S_inv * g * basis.S).is_strictly_upper_triangular());
        }
    }
}

TEST_CASE("families with a non-nilpotent generator are rejected") {
    MatrixFamily F{2, {}};
    RatMatrix g(2, 2);
    g.at(0, 0) = rat(1); // eigenvalue 1: cannot be strictly upper in any basis
    F.generators.push_back(g);
    CHECK_THROWS_AS(triangularize_family(F), NotStronglyNilpotent);
}

TEST_CASE("index bound: length-n products of a triangularizable family vanish") {
    Rng rng(37);
    for (int trial = 0; trial < 6; ++trial) {
        int n = static_cast<int>(rng.uniform_int(2, 4));
        int count = static_cast<int>(rng.uniform_int(1, 4));
        RatMatrix P = random_invertible(rng, n);
        RatMatrix P_inv = P.inverse();
        std::vector<RatMatrix> gens;
        for (int k = 0; k < count; ++k) gens.push_back(P_inv * random_strictly_upper(rng, n) * P);
        (void)triangularize_family(MatrixFamily{n, gens});
        // exhaustive products of length n over the generator alphabet
        std::vector<int> word(n, 0);
        while (true) {
            RatMatrix prod = gens[word[0]];
            for (int i = 1; i < n; ++i) prod = prod * gens[word[i]];
            CHECK(prod.is_zero());
            int i = n - 1;
            while (i >= 0 && word[i] == count - 1) word[i--] = 0;
            if (i < 0) break;
            ++word[i];
        }
    }
}

TEST_CASE("triangularize_map: fixed points of the reduction") {
    // the triangular fixture is untouched
    TriangularizedMap tm = triangularize_map(ex::example2());
    CHECK(tm.S == RatMatrix::identity(4));
    CHECK(tm.triangular_form == ex::example2());

    // conjugated triangular maps are recovered (round trip oracle)
    Rng rng(41);
    PolyMap t = poly_map_of("dim 3; f1 = x1 + x2*x3 - x3^2; f2 = x2 + 2*x3 + 1; f3 = x3 - 5;");
    for (int trial = 0; trial < 8; ++trial) {
        RatMatrix S0 = random_invertible(rng, 3);
        RatMatrix S0_inv = S0.inverse();
        PolyMap lin = zero_poly_map(3), lin_inv = zero_poly_map(3);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                lin.components[i] += Poly::variable(3, j) * S0.at(i, j);
                lin_inv.components[i] += Poly::variable(3, j) * S0_inv.at(i, j);
            }
        }
        PolyMap f = compose(lin_inv, compose(t, lin));
        CHECK_NOTHROW(triangularize_map(f)); // dependence check is internal and exact
    }

    // not linearly triangularizable: strong nilpotence fails
    CHECK_THROWS_AS(triangularize_map(to_poly_map(ex::example4())), NotStronglyNilpotent);
}

TEST_CASE("equivalence of generic strong nilpotence and triangularizability on fixtures") {
    std::vector<PolyMap> fs{
        ex::example2(),
        poly_map_of("dim 2; f1 = x1 + x2^2; f2 = x2;"),
        to_poly_map(ex::example4()),
        id_plus(zero_poly_map(3)),
    };
    for (const auto& f : fs) {
        bool generic = strongly_nilpotent_generic(perturbation(f)).strongly_nilpotent;
        bool triangularizable = true;
        try {
            (void)triangularize_map(f);
        } catch (const NotStronglyNilpotent&) {
            triangularizable = false;
        }
        CHECK(generic == triangularizable);
    }
}

TEST_CASE("composition products with translation-dilations") {
    Rng rng(43);
    // triangularizable fixtures: any such product is constant
    std::vector<PolyMap> hs{perturbation(ex::example2()),
                            perturbation(poly_map_of("dim 2; f1 = x1 + x2^2; f2 = x2;"))};
    for (const auto& h : hs) {
        int n = h.dim;
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<TranslationDilation> taus;
            for (int i = 0; i < n; ++i) {
                Rational lambda = rng.rational(3, 2);
                if (lambda == 0) lambda = 1;
                taus.push_back({rng.rational_point(n, 3, 2), lambda});
            }
            CHECK(composition_product_constant(h, taus));
        }
    }

    // index-3 example with identity dilations: h o h o h is nonconstant
    PolyMap h4 = perturbation(to_poly_map(ex::example4()));
    std::vector<TranslationDilation> ident(3, TranslationDilation{RatVec{rat(0), rat(0), rat(0)}, rat(1)});
    CHECK_FALSE(composition_product_constant(h4, ident));

    CHECK(composition_product_constant(zero_poly_map(3), ident));
}
