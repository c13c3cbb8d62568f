#include "unimap/jacobian.hpp"

#include <cmath>

#include "unimap/errors.hpp"
#include "unimap/rng.hpp"

namespace unimap {

std::vector<double> ExprMatrix::eval(const std::vector<double>& point) const {
    std::vector<double> out(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) out[i] = eval_double(entries[i], point, phi);
    return out;
}

PolyMatrix PolyMatrix::zero(int n, int nvars) {
    PolyMatrix m;
    m.n = n;
    m.entries.assign(static_cast<size_t>(n) * n, Poly(nvars));
    return m;
}

PolyMatrix PolyMatrix::identity(int n, int nvars) {
    PolyMatrix m = zero(n, nvars);
    for (int i = 0; i < n; ++i) m.at(i, i) = Poly::constant(nvars, 1);
    return m;
}

bool PolyMatrix::is_zero() const {
    for (const auto& e : entries) {
        if (!e.is_zero()) return false;
    }
    return true;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (n != o.n) throw DimensionMismatch("polynomial matrix product shape mismatch");
    PolyMatrix out = zero(n, nvars());
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (o.at(k, j).is_zero()) continue;
                out.at(i, j) += at(i, k) * o.at(k, j);
            }
        }
    }
    return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    if (n != o.n) throw DimensionMismatch("polynomial matrix difference shape mismatch");
    PolyMatrix out = *this;
    for (size_t i = 0; i < entries.size(); ++i) out.entries[i] -= o.entries[i];
    return out;
}

Poly PolyMatrix::trace() const {
    Poly t(nvars());
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

RatMatrix PolyMatrix::eval(const RatVec& point) const {
    RatMatrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out.at(i, j) = at(i, j).eval(point);
    }
    return out;
}

PolyMatrix PolyMatrix::leading_principal_submatrix(int k) const {
    PolyMatrix out = zero(k, nvars());
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) out.at(i, j) = at(i, j);
    }
    return out;
}

PolyMatrix PolyMatrix::substitute(const std::vector<Poly>& args) const {
    PolyMatrix out;
    out.n = n;
    out.entries.reserve(entries.size());
    for (const auto& e : entries) out.entries.push_back(e.substitute(args));
    return out;
}

ExprMatrix jacobian(const ExprMap& m) {
    ExprMatrix J;
    J.n = m.dim;
    J.phi = m.phi;
    J.entries.reserve(static_cast<size_t>(m.dim) * m.dim);
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) J.entries.push_back(differentiate(m.components[i], j, m.phi));
    }
    return J;
}

PolyMatrix jacobian(const PolyMap& m) {
    PolyMatrix J;
    J.n = m.dim;
    J.entries.reserve(static_cast<size_t>(m.dim) * m.dim);
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) J.entries.push_back(m.components[i].derivative(j));
    }
    return J;
}

std::vector<Poly> char_poly_coeffs(const PolyMatrix& M) {
    int n = M.n;
    std::vector<Poly> coeffs;
    coeffs.reserve(n);
    PolyMatrix Mk = M; // M_1 = M
    for (int k = 1; k <= n; ++k) {
        Poly ck = Mk.trace() / Rational(-k);
        coeffs.push_back(ck);
        if (k == n) break;
        // M_{k+1} = M (M_k + c_k I)
        PolyMatrix shifted = Mk;
        for (int i = 0; i < n; ++i) shifted.at(i, i) += ck;
        Mk = M * shifted;
    }
    return coeffs;
}

RatVec nonzero_witness(const Poly& p) {
    int n = p.nvars();
    if (p.is_zero()) throw Error("witness search on zero polynomial");
    if (n == 0) return {};
    for (long radius = 0;; ++radius) {
        // enumerate points with max-norm == radius, lexicographic
        std::vector<long> point(n, -radius);
        while (true) {
            long maxabs = 0;
            for (long v : point) maxabs = std::max(maxabs, std::abs(v));
            if (maxabs == radius) {
                RatVec q;
                q.reserve(n);
                for (long v : point) q.push_back(Rational(v));
                if (p.eval(q) != 0) return q;
            }
            int i = n - 1;
            while (i >= 0 && point[i] == radius) {
                point[i] = -radius;
                --i;
            }
            if (i < 0) break;
            ++point[i];
        }
    }
}

namespace {

NilpotenceVerdict exact_verdict_for(const PolyMatrix& J) {
    auto coeffs = char_poly_coeffs(J);
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (!coeffs[k].is_zero()) {
            NilpotenceVerdict v;
            v.status = NilpotenceStatus::ProvenNot;
            v.witness = nonzero_witness(coeffs[k]);
            v.witness_value = coeffs[k].eval(*v.witness);
            v.detail = "characteristic coefficient of lambda^" +
                       std::to_string(J.n - 1 - static_cast<int>(k)) + " is nonzero";
            return v;
        }
    }
    NilpotenceVerdict v;
    v.status = NilpotenceStatus::ProvenNilpotent;
    v.detail = "all characteristic coefficients are identically zero";
    return v;
}

} // namespace

NilpotenceVerdict is_nilpotent_exact(const PolyMap& h) {
    return exact_verdict_for(jacobian(h));
}

NilpotenceVerdict is_unipotent(const PolyMap& f) {
    return is_nilpotent_exact(perturbation(f));
}

std::vector<double> float_char_coeffs(const std::vector<double>& flat, int n) {
    // Faddeev-LeVerrier on doubles
    std::vector<double> Mk = flat;
    std::vector<double> coeffs;
    auto mul = [n](const std::vector<double>& A, const std::vector<double>& B) {
        std::vector<double> C(static_cast<size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                double a = A[static_cast<size_t>(i) * n + k];
                if (a == 0) continue;
                for (int j = 0; j < n; ++j) C[static_cast<size_t>(i) * n + j] += a * B[static_cast<size_t>(k) * n + j];
            }
        }
        return C;
    };
    for (int k = 1; k <= n; ++k) {
        double tr = 0;
        for (int i = 0; i < n; ++i) tr += Mk[static_cast<size_t>(i) * n + i];
        double ck = -tr / k;
        coeffs.push_back(ck);
        if (k == n) break;
        std::vector<double> shifted = Mk;
        for (int i = 0; i < n; ++i) shifted[static_cast<size_t>(i) * n + i] += ck;
        Mk = mul(flat, shifted);
    }
    return coeffs;
}

NilpotenceVerdict is_nilpotent_sampled(const ExprMap& h, int samples, double tol,
                                       double box_lo, double box_hi, std::uint64_t seed) {
    ExprMatrix J = jacobian(h);
    Rng rng(seed);
    NilpotenceVerdict v;
    v.samples = samples;
    v.tol = tol;
    bool all_small = true;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> p = rng.point(h.dim, box_lo, box_hi);
        std::vector<double> flat;
        try {
            flat = J.eval(p);
        } catch (const Error& e) {
            v.status = NilpotenceStatus::Inconclusive;
            v.detail = std::string("evaluation failure at a sample: ") + e.what();
            return v;
        }
        for (double c : float_char_coeffs(flat, h.dim)) {
            if (!std::isfinite(c)) {
                v.status = NilpotenceStatus::Inconclusive;
                v.detail = "non-finite characteristic coefficient at a sample";
                return v;
            }
            if (std::abs(c) > 10 * tol) {
                v.status = NilpotenceStatus::ProvenNot;
                v.float_witness = p;
                v.detail = "characteristic coefficient " + std::to_string(c) + " exceeds 10*tol";
                return v;
            }
            if (std::abs(c) >= tol) all_small = false;
        }
    }
    v.status = all_small ? NilpotenceStatus::ProbablyNilpotent : NilpotenceStatus::Inconclusive;
    v.detail = all_small ? "all sampled characteristic coefficients below tol"
                         : "coefficients between tol and 10*tol observed";
    return v;
}

bool matrix_power_zero(const PolyMatrix& M, int k) {
    if (k < 1) throw Error("matrix power requires k >= 1");
    PolyMatrix acc = M;
    for (int i = 1; i < k; ++i) {
        if (acc.is_zero()) return true;
        acc = acc * M;
    }
    return acc.is_zero();
}

std::string to_string(NilpotenceStatus s) {
    switch (s) {
        case NilpotenceStatus::ProvenNilpotent: return "ProvenNilpotent";
        case NilpotenceStatus::ProvenNot: return "ProvenNot";
        case NilpotenceStatus::ProbablyNilpotent: return "ProbablyNilpotent";
        case NilpotenceStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

} // namespace unimap
