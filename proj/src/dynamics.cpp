#include "unimap/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "unimap/errors.hpp"
#include "unimap/jacobian.hpp"
#include "unimap/rng.hpp"

namespace unimap {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

Orbit integrate_flow(const ExprMap& f, const std::vector<double>& p0, double t0, double t1, int steps) {
    if (steps < 1) throw PreconditionError("steps must be >= 1");
    int n = f.dim;
    auto field = [&f, n](const std::vector<double>& p) {
        std::vector<double> v = f.eval(p);
        for (int i = 0; i < n; ++i) v[i] = -v[i];
        return v;
    };
    Orbit orbit;
    orbit.mode = OrbitMode::Continuous;
    double h = (t1 - t0) / steps;
    std::vector<double> p = p0;
    orbit.times.push_back(t0);
    orbit.points.push_back(p);
    orbit.norms.push_back(norm2(p));
    for (int s = 1; s <= steps; ++s) {
        std::vector<double> k1 = field(p);
        std::vector<double> tmp(n);
        for (int i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
        std::vector<double> k2 = field(tmp);
        for (int i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
        std::vector<double> k3 = field(tmp);
        for (int i = 0; i < n; ++i) tmp[i] = p[i] + h * k3[i];
        std::vector<double> k4 = field(tmp);
        for (int i = 0; i < n; ++i) p[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
        double norm = norm2(p);
        orbit.times.push_back(t0 + s * h);
        orbit.points.push_back(p);
        orbit.norms.push_back(norm);
        if (!std::isfinite(norm) || norm > 1e12) {
            orbit.diverged = true;
            break;
        }
    }
    return orbit;
}

double verify_analytic_orbit(const ExprMap& f, const std::vector<double>& sample_times) {
    if (f.dim != 3) throw PreconditionError("the escape orbit lives in R^3");
    double worst = 0;
    for (double t : sample_times) {
        std::vector<double> p{18 * std::exp(t), -12 * std::exp(2 * t), std::exp(-t)};
        std::vector<double> dp{18 * std::exp(t), -24 * std::exp(2 * t), -std::exp(-t)};
        std::vector<double> fp = f.eval(p);
        double res = 0;
        for (int i = 0; i < 3; ++i) res = std::max(res, std::abs(dp[i] + fp[i]));
        worst = std::max(worst, res);
    }
    return worst;
}

Orbit iterate_map(const ExprMap& h, const std::vector<double>& p0, int k) {
    if (k < 1) throw PreconditionError("iteration count must be >= 1");
    Orbit orbit;
    orbit.mode = OrbitMode::Discrete;
    std::vector<double> p = p0;
    orbit.points.push_back(p);
    orbit.norms.push_back(norm2(p));
    for (int s = 0; s < k; ++s) {
        p = h.eval(p);
        double norm = norm2(p);
        orbit.points.push_back(p);
        orbit.norms.push_back(norm);
        if (!std::isfinite(norm) || norm > 1e12) {
            orbit.diverged = true;
            break;
        }
    }
    return orbit;
}

std::optional<int> detect_period(const Orbit& orbit, double tol) {
    int total = static_cast<int>(orbit.points.size());
    if (total < 2) return std::nullopt;
    int burn_in = total / 2;
    int usable = total - burn_in;
    for (int p = 1; p < usable; ++p) {
        bool periodic = true;
        for (int i = burn_in; i + p < total; ++i) {
            double d = 0;
            for (size_t c = 0; c < orbit.points[i].size(); ++c) {
                d += (orbit.points[i + p][c] - orbit.points[i][c]) * (orbit.points[i + p][c] - orbit.points[i][c]);
            }
            if (std::sqrt(d) >= tol) {
                periodic = false;
                break;
            }
        }
        if (periodic) return p;
    }
    return std::nullopt;
}

SpectralReport spectral_report(const ExprMap& m, int samples, double box_lo, double box_hi,
                               std::optional<std::complex<double>> target, std::uint64_t seed) {
    int n = m.dim;
    ExprMatrix J = jacobian(m);
    Rng rng(seed);
    SpectralReport report;
    report.samples = samples;
    report.target = target;
    report.min_real_part = 1e300;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> p = rng.point(n, box_lo, box_hi);
        std::vector<double> flat;
        try {
            flat = J.eval(p);
        } catch (const Error&) {
            ++report.failures;
            continue;
        }
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A(i, j) = flat[static_cast<size_t>(i) * n + j];
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success) {
            ++report.failures;
            continue;
        }
        for (int i = 0; i < n; ++i) {
            std::complex<double> lambda = solver.eigenvalues()(i);
            report.min_real_part = std::min(report.min_real_part, lambda.real());
            report.max_modulus = std::max(report.max_modulus, std::abs(lambda));
            if (target) {
                report.max_deviation_from_target =
                    std::max(report.max_deviation_from_target, std::abs(lambda - *target));
            }
        }
    }
    return report;
}

ExprMap negate_map(const ExprMap& m) {
    ExprMap out;
    out.dim = m.dim;
    out.phi = m.phi;
    for (const auto& c : m.components) out.components.push_back(Expr::neg(c));
    return out;
}

} // namespace unimap
