#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unimap/map.hpp"

namespace unimap {

// g_a(x) = x - f(x) + a. Fixed points of g_a are exactly the preimages
// f^{-1}(a).
ExprMap g_family(const ExprMap& f, const RatVec& a);
PolyMap g_family(const PolyMap& f, const RatVec& a);

struct PowerConstancy {
    std::optional<int> power;      // smallest m with tau_y^(o m) constant in x
    std::optional<PolyMap> formula; // x(y) as a polynomial map in y
    bool capped = false;           // cap (or term limit) reached: not a disproof
    int cap = 0;
};

// Composes tau_y(w) = y - h(w) symbolically with y carried as n fresh
// variables; returns the first power at which all w-variables vanish.
PowerConstancy symbolic_power_constancy(const PolyMap& h, int cap = -1 /* default 2n */);

enum class InversionStatus { Ok, ConstancyNotReached, NotAnInverse };

struct InversionResult {
    InversionStatus status = InversionStatus::Ok;
    std::vector<double> point;
    std::optional<RatVec> exact_point;
    double residual = 0; // 0 on the exact path
    int power = 0;
    std::string method;
};

// Applies tau_y m times from the two starts 0 and (1,..,1); accepts iff both
// agree and f(x) = y (exactly on the exact path, else within tol).
InversionResult invert_by_power(const ExprMap& f, const std::vector<double>& y, int m, double tol = 1e-9);
InversionResult invert_by_power_exact(const ExprMap& f, const RatVec& y, int m);

struct PlanarInverse {
    InversionStatus status = InversionStatus::Ok;
    std::vector<double> via_g;        // z + g(z + g(z))
    std::vector<double> via_reflection; // z - f(-z) - f(-f(-z))
    double disagreement = 0;
    double residual = 0;
};

// Both universal planar inverse formulas; valid when J(f) is unipotent
// (the caller certifies that). Disagreement means the caller's certificate
// was wrong and is reported as such.
PlanarInverse planar_inverse_closed_forms(const ExprMap& f, const std::vector<double>& z, double tol = 1e-9);

// Exact symbolic versions of the two universal formulas (planar polynomial
// maps): id + G o (id + G) and id - F o N - F o N o F o N with N = -id.
std::pair<PolyMap, PolyMap> planar_inverse_formulas_symbolic(const PolyMap& f);

struct FixedPointReport {
    bool converged = false;
    bool diverged = false;
    std::vector<double> point; // fixed point or final iterate
    int iterations = 0;
    double residual = 0;
};

// Iterates x <- h(x) until ||h(x) - x|| < tol; divergence at norm 1e12.
FixedPointReport fixed_point_iterate(const ExprMap& h, const std::vector<double>& start,
                                     int max_iter = 1000, double tol = 1e-10);

// p must satisfy f(p) = p exactly; true iff J(f)(p) does not have
// eigenvalue 1, decided exactly via det(J(f)(p) - I) != 0.
bool isolated_fixed_point_check(const PolyMap& f, const RatVec& p);

} // namespace unimap
