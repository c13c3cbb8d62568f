#include "unimap/triangular.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "unimap/errors.hpp"
#include "unimap/rng.hpp"

namespace unimap {

MatrixFamily coefficient_family(const PolyMap& h) {
    PolyMatrix J = jacobian(h);
    int n = h.dim;
    // collect all monomials appearing anywhere in J
    std::set<Monomial, GradedLexLess> monomials;
    for (const auto& entry : J.entries) {
        for (const auto& [m, c] : entry.terms()) monomials.insert(m);
    }
    std::set<RatMatrix> distinct;
    for (const auto& mono : monomials) {
        RatMatrix C(n, n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Rational c = J.at(i, j).coefficient(mono);
                if (c != 0) nonzero = true;
                C.at(i, j) = c;
            }
        }
        if (nonzero) distinct.insert(C);
    }
    MatrixFamily F;
    F.n = n;
    F.generators.assign(distinct.begin(), distinct.end());
    return F;
}

StrongNilpotenceCertificate strongly_nilpotent_generic(const PolyMap& h) {
    int n = h.dim;
    PolyMatrix J = jacobian(h);
    int big = n * n;
    // block i occupies variables [i*n, (i+1)*n)
    PolyMatrix product = PolyMatrix::identity(n, big);
    for (int block = 0; block < n; ++block) {
        std::vector<Poly> args;
        args.reserve(n);
        for (int j = 0; j < n; ++j) args.push_back(Poly::variable(big, block * n + j));
        product = product * J.substitute(args);
    }
    StrongNilpotenceCertificate cert;
    if (product.is_zero()) {
        cert.strongly_nilpotent = true;
        cert.detail = "generic n-fold Jacobian product vanishes identically";
        return cert;
    }
    for (const auto& entry : product.entries) {
        if (entry.is_zero()) continue;
        cert.strongly_nilpotent = false;
        cert.nonzero_entry = entry;
        RatVec flat = nonzero_witness(entry);
        std::vector<RatVec> points;
        for (int block = 0; block < n; ++block) {
            points.emplace_back(flat.begin() + block * n, flat.begin() + (block + 1) * n);
        }
        cert.witness_points = points;
        cert.detail = "generic product has a nonzero entry";
        return cert;
    }
    throw Error("unreachable: nonzero product without nonzero entry");
}

SampledStrongNilpotence strongly_nilpotent_sampled(const ExprMap& m, int tuples, double tol,
                                                   double box_lo, double box_hi, std::uint64_t seed) {
    int n = m.dim;
    ExprMatrix J = jacobian(m);
    Rng rng(seed);
    SampledStrongNilpotence out;
    out.tuples = tuples;
    out.tol = tol;
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
    double worst = 0;
    for (int t = 0; t < tuples; ++t) {
        std::vector<std::vector<double>> pts;
        std::vector<double> prod;
        for (int b = 0; b < n; ++b) {
            pts.push_back(rng.point(n, box_lo, box_hi));
            std::vector<double> Jb = J.eval(pts.back());
            prod = b == 0 ? Jb : mul(prod, Jb);
        }
        double mx = 0;
        for (double v : prod) mx = std::max(mx, std::abs(v));
        worst = std::max(worst, mx);
        if (mx > tol) {
            out.status = SampledStrength::NotStronglyNilpotent;
            out.witness_tuple = pts;
            out.max_abs_entry = mx;
            return out;
        }
    }
    out.status = SampledStrength::ProbablyStronglyNilpotent;
    out.max_abs_entry = worst;
    return out;
}

namespace {

// Inductive step of the triangularization theorem: find a common kernel
// vector, extend it to a basis, pass to the quotient.
RatMatrix triangularize_rec(const std::vector<RatMatrix>& gens, int n, int stage) {
    if (n == 0) return RatMatrix(0, 0);
    bool all_zero = true;
    for (const auto& g : gens) {
        if (!g.is_zero()) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) return RatMatrix::identity(n);

    std::vector<RatVec> kernel = vstack(gens).kernel_basis();
    if (kernel.empty()) {
        throw NotStronglyNilpotent(stage, "the family has trivial common kernel");
    }
    const RatVec& w = kernel.front(); // first reduced kernel basis vector

    // basis B = [w, e_j (j != pivot)]; det B = +/- w[pivot] != 0
    int pivot = 0;
    while (w[pivot] == 0) ++pivot;
    RatMatrix B(n, n);
    for (int i = 0; i < n; ++i) B.at(i, 0) = w[i];
    int col = 1;
    for (int j = 0; j < n; ++j) {
        if (j == pivot) continue;
        B.at(j, col) = 1;
        ++col;
    }
    RatMatrix B_inv = B.inverse();

    // conjugate and drop the first row/column (G' e_1 = B^-1 G w = 0)
    std::vector<RatMatrix> quotient;
    quotient.reserve(gens.size());
    for (const auto& g : gens) {
        RatMatrix gp = B_inv * g * B;
        RatMatrix q(n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            for (int j = 1; j < n; ++j) q.at(i - 1, j - 1) = gp.at(i, j);
        }
        quotient.push_back(std::move(q));
    }
    RatMatrix S_sub = triangularize_rec(quotient, n - 1, stage + 1);
    RatMatrix D = RatMatrix::identity(n);
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) D.at(i, j) = S_sub.at(i - 1, j - 1);
    }
    D.at(0, 0) = 1;
    return B * D;
}

} // namespace

TriangularizingBasis triangularize_family(const MatrixFamily& F) {
    TriangularizingBasis out;
    out.S = triangularize_rec(F.generators, F.n, 1);
    if (out.S.rows() == 0) out.S = RatMatrix::identity(F.n);
    out.S_inv = out.S.inverse();
    for (const auto& g : F.generators) {
        RatMatrix t = out.S_inv * g * out.S;
        if (!t.is_strictly_upper_triangular()) {
            throw VerificationFailure("triangularizing basis failed exact strict-upper check");
        }
    }
    return out;
}

TriangularizedMap triangularize_map(const PolyMap& f) {
    PolyMap h = perturbation(f);
    MatrixFamily F = coefficient_family(h);
    TriangularizingBasis basis = triangularize_family(F);
    int n = f.dim;

    auto linear_map = [n](const RatMatrix& A) {
        PolyMap m = zero_poly_map(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (A.at(i, j) != 0) m.components[i] += Poly::variable(n, j) * A.at(i, j);
            }
        }
        return m;
    };

    TriangularizedMap out;
    out.S = basis.S;
    out.S_inv = basis.S_inv;
    out.triangular_form = compose(linear_map(basis.S_inv), compose(f, linear_map(basis.S)));
    for (int i = 0; i < n; ++i) {
        Poly ti = out.triangular_form.components[i] - Poly::variable(n, i);
        if (!ti.depends_only_on_vars_from(i + 1)) {
            throw VerificationFailure("triangular form dependence check failed at component " + std::to_string(i + 1));
        }
    }
    return out;
}

bool composition_product_constant(const PolyMap& h, const std::vector<TranslationDilation>& dilations) {
    int n = h.dim;
    if (static_cast<int>(dilations.size()) != n) {
        throw DimensionMismatch("need exactly n translation-dilations");
    }
    auto tau_map = [n](const TranslationDilation& td) {
        PolyMap m = zero_poly_map(n);
        for (int i = 0; i < n; ++i) {
            m.components[i] = Poly::variable(n, i) * td.scale + Poly::constant(n, td.offset[i]);
        }
        return m;
    };
    // h o tau_1 o h o tau_2 o ... o h o tau_n
    PolyMap p = compose(h, tau_map(dilations[0]));
    for (int i = 1; i < n; ++i) {
        p = compose(p, compose(h, tau_map(dilations[i])));
    }
    return p.is_constant();
}

} // namespace unimap
