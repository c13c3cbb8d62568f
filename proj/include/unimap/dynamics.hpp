#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "unimap/map.hpp"

namespace unimap {

enum class OrbitMode { Continuous, Discrete };

/// Point sequence from a flow or an iteration, with per-point norms and
/// divergence/periodicity metadata.
struct Orbit {
    OrbitMode mode = OrbitMode::Discrete;
    std::vector<double> times; // continuous mode: strictly increasing grid
    std::vector<std::vector<double>> points;
    std::vector<double> norms;
    bool diverged = false;
    std::optional<int> period;
};

// Classical fixed-step RK4 on dp/dt = -f(p). Integration halts with the
// divergence flag when ||p|| exceeds 1e12.
Orbit integrate_flow(const ExprMap& f, const std::vector<double>& p0, double t0, double t1, int steps);

// Residual max_t ||dp/dt + f(p(t))|| for the closed-form escape orbit
// p(t) = (18 e^t, -12 e^{2t}, e^{-t}); f must be the 3-dimensional escape
// fixture with phi = -t^2 attached.
double verify_analytic_orbit(const ExprMap& f, const std::vector<double>& sample_times);

Orbit iterate_map(const ExprMap& h, const std::vector<double>& p0, int k);

// Smallest period p such that ||x_{i+p} - x_i|| < tol for all recorded i
// past the burn-in (half the orbit), or nullopt.
std::optional<int> detect_period(const Orbit& orbit, double tol = 1e-8);

struct SpectralReport {
    int samples = 0;
    int failures = 0; // skipped points
    double min_real_part = 0;
    double max_modulus = 0;
    double max_deviation_from_target = 0;
    std::optional<std::complex<double>> target;
};

// Float eigenvalue statistics of J(m) at sampled points (dense QR solver;
// statistics only, never certificates).
SpectralReport spectral_report(const ExprMap& m, int samples = 200, double box_lo = -10.0,
                               double box_hi = 10.0,
                               std::optional<std::complex<double>> target = std::nullopt,
                               std::uint64_t seed = 42);

ExprMap negate_map(const ExprMap& m); // -f (for J(-f) spectra)

} // namespace unimap
