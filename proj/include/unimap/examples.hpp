#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unimap/map.hpp"
#include "unimap/newclass.hpp"

namespace unimap::examples {

// The five reference automorphisms, with their closed-form inverses where
// one is displayed. Maps 3-5 take the phi definition as text ("-t^2", "t").
ExprMap example1();
ExprMap example1_inverse();

// Polynomial triangular instance in R^4 (a, b, c of degree <= 3, constant d)
// and its compositional inverse.
PolyMap example2();
PolyMap example2_inverse();

ExprMap example3(const std::string& phi = "-t^2");
ExprMap example3_inverse(const std::string& phi = "-t^2");
// Recipe reproducing example3's perturbation through the recursive builder.
NewClassRecipe example3_recipe(const std::string& phi = "-t^2");

ExprMap example4(const std::string& phi = "t");
ExprMap example4_inverse(const std::string& phi = "t");

ExprMap example5_h(const std::string& phi = "t");

// f(x,y) = (x + y^3, y - x^3): the no-zeros-at-infinity diffeomorphism.
PolyMap randall_map();

// Cubic-linear f = x + (Ax)^3 with A = [[1,1],[-1,-1]]: det J(f) = 1 and a
// zero at infinity.
PolyMap cubic_linear_det1();

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    int example = 0;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Runs the fixture suite for example k (1..5); deterministic given the seed.
VerifyReport verify_example(int k, std::uint64_t seed = 42);

} // namespace unimap::examples
