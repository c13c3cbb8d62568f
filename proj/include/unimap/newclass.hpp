#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimap/jacobian.hpp"
#include "unimap/map.hpp"
#include "unimap/ratmatrix.hpp"

namespace unimap {

/// One inductive stage of a recipe: an i x i matrix M and an i-vector of
/// offsets, both with entries depending only on the parameters
/// x_{i+1}..x_n. The stage takes a perturbation of level i-1 to one of
/// level i via h = M^a(z) hin(M(z) v, z) + eta(z) (parameters pass through).
struct RecipeStage {
    int level = 0;                        // i >= 2
    std::vector<std::vector<Expr>> M;     // i x i
    std::vector<Expr> offset;             // eta, length i
};

/// Recursive construction data for a perturbation in H_{n,level}. The base
/// is h_1, independent of x_1; stages are listed in increasing level order.
struct NewClassRecipe {
    int dim = 0;
    Expr base_h1;
    std::vector<RecipeStage> stages;
    std::optional<Expr> phi;

    int level() const { return 1 + static_cast<int>(stages.size()); }
};

// Syntactic dependence checks; throws DependenceViolation naming the
// offending entry and variable.
void validate_recipe(const NewClassRecipe& recipe);

// Classical adjoint of a square matrix of expressions (cofactor transpose;
// the 1x1 adjoint is [1]). Satisfies M M^a = det(M) I symbolically.
std::vector<std::vector<Expr>> classical_adjoint(const std::vector<std::vector<Expr>>& M);
Expr expr_det(const std::vector<std::vector<Expr>>& M);

// Builds the perturbation the recipe describes. Components level+1..n are
// identically zero; the recipe's phi definition is attached to the result.
ExprMap build(const NewClassRecipe& recipe);

// Like build, but also returns the intermediate map of every level
// (index k holds the level-(k+1) perturbation).
std::vector<ExprMap> build_levels(const NewClassRecipe& recipe);

// Closure operations; each returns a recipe witnessing membership.
NewClassRecipe scale(const NewClassRecipe& recipe, const Rational& r);
NewClassRecipe offset(const NewClassRecipe& recipe, const RatVec& C);
NewClassRecipe conjugate(const NewClassRecipe& recipe, const RatMatrix& T);
// Lifts to a higher level with identity stages (levels are nested).
NewClassRecipe lift_to_level(const NewClassRecipe& recipe, int target_level);

struct ClaimsReport {
    bool polynomial = false;
    bool jacobian_nilpotent = false;           // exact, polynomial path
    std::vector<int> checked_submatrix_levels; // i for each verified leading submatrix
    bool submatrices_nilpotent = false;
    bool power_constant = false;               // h^(o n) constant
    std::optional<RatVec> power_value;
    // transcendental recipes: sampled constancy of h^(o n)
    bool sampled_power_constant = false;
    int sampled_points = 0;
    double sampled_tol = 0;
    bool all_pass = false;
    std::string detail;
};

// Verifies the constructed instance: J(h) nilpotent (exact), the i-th
// leading principal submatrix of J(h_i) nilpotent for every level i of the
// chain, and h^(o n) constant. Polynomial recipes are checked exactly;
// transcendental ones numerically (100 points, tol 1e-8). A failed claim
// throws VerificationFailure: it signals an implementation bug.
ClaimsReport verify_claims(const NewClassRecipe& recipe);

// f = id + h with h built from the recipe; computes x with f(x) = y as the
// value of the constant composition power (y - h(.))^(o n), then verifies
// f(x) = y (exactly on the exact path). Verification failure throws.
RatVec invert(const NewClassRecipe& recipe, const RatVec& y);
std::vector<double> invert(const NewClassRecipe& recipe, const std::vector<double>& y, double tol = 1e-9);

// Recipe file format:
//   file  := "dim" INT ";" ("phi" "=" expr ";")? "base" expr ";" stage*
//   stage := "level" INT "{" "M" "=" "[" row (";" row)* "]" ";"
//                            "C" "=" "[" expr ("," expr)* "]" ";" "}"
//   row   := expr ("," expr)*
// The base expression may not use x1; stage entries of level i may use only
// x_{i+1}..x_n. Stages must appear in increasing order 2, 3, ...
NewClassRecipe parse_recipe(const std::string& text);
std::string render_recipe(const NewClassRecipe& recipe);

} // namespace unimap
