#include "unimap/planar.hpp"

#include "unimap/errors.hpp"
#include "unimap/jacobian.hpp"

namespace unimap {

ExprMap make_planar(const PlanarNormalForm& nf) {
    Expr s = Expr::sum({Expr::prod({Expr::constant(nf.a), Expr::variable(0)}),
                        Expr::prod({Expr::constant(nf.b), Expr::variable(1)})});
    Expr phi_s = substitute(nf.phi, {s});
    ExprMap f;
    f.dim = 2;
    f.components.push_back(Expr::variable(0) + Expr::prod({Expr::constant(nf.b), phi_s}) + Expr::constant(nf.c));
    f.components.push_back(Expr::variable(1) - Expr::prod({Expr::constant(nf.a), phi_s}) + Expr::constant(nf.d));
    return f;
}

PolyMap make_planar_poly(const PlanarNormalForm& nf) {
    if (!is_polynomial_shape(nf.phi)) throw NotPolynomial("planar phi is not polynomial");
    Poly phi = to_poly(nf.phi, 1);
    Poly s = Poly::variable(2, 0) * nf.a + Poly::variable(2, 1) * nf.b;
    Poly phi_s = phi.substitute({s});
    PolyMap f = identity_poly_map(2);
    f.components[0] += phi_s * nf.b + Poly::constant(2, nf.c);
    f.components[1] -= phi_s * nf.a;
    f.components[1] += Poly::constant(2, nf.d);
    return f;
}

PlanarExtraction extract_normal_form(const PolyMap& f) {
    if (f.dim != 2) throw PreconditionError("planar extraction requires n = 2");
    auto verdict = is_unipotent(f);
    if (verdict.status != NilpotenceStatus::ProvenNilpotent) {
        throw PreconditionError("extraction requires a proven unipotent Jacobian; got " + to_string(verdict.status));
    }
    PlanarExtraction out;

    PolyMap h = perturbation(f);
    RatVec h0 = h.eval(RatVec{Rational(0), Rational(0)});
    out.form.c = h0[0];
    out.form.d = h0[1];
    PolyMap hs = h; // h shifted so hs(0) = 0
    hs.components[0] -= Poly::constant(2, h0[0]);
    hs.components[1] -= Poly::constant(2, h0[1]);

    if (hs.components[0].is_zero() && hs.components[1].is_zero()) {
        out.form.a = 0;
        out.form.b = 0;
        out.form.phi = Expr::constant(0);
        out.ok = true;
        return out;
    }

    // witness point with J(h) != 0; its image direction is span(b, -a)
    PolyMatrix J = jacobian(hs);
    const Poly* nonzero_entry = nullptr;
    for (const auto& e : J.entries) {
        if (!e.is_zero()) {
            nonzero_entry = &e;
            break;
        }
    }
    if (!nonzero_entry) {
        out.failure = "NotPlanarNormalizable: nonconstant perturbation with identically zero Jacobian";
        return out;
    }
    RatVec witness = nonzero_witness(*nonzero_entry);
    RatMatrix N = J.eval(witness);
    RatVec col{N.at(0, 0), N.at(1, 0)};
    if (col[0] == 0 && col[1] == 0) {
        col = {N.at(0, 1), N.at(1, 1)};
    }
    // J(h) = phi'(s) [[ab, b^2], [-a^2, -ab]]: columns are multiples of (b, -a)
    Rational b = col[0];
    Rational a = -col[1];

    // normalize (a, b) to coprime integers, first nonzero positive
    Integer q1 = a.get_den(), q2 = b.get_den();
    Integer lcm;
    mpz_lcm(lcm.get_mpz_t(), q1.get_mpz_t(), q2.get_mpz_t());
    Integer ia = a.get_num() * (lcm / q1);
    Integer ib = b.get_num() * (lcm / q2);
    Integer g;
    mpz_gcd(g.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
    ia /= g;
    ib /= g;
    if (ia < 0 || (ia == 0 && ib < 0)) {
        ia = -ia;
        ib = -ib;
    }
    out.form.a = Rational(ia);
    out.form.b = Rational(ib);

    // recover phi(t) by evaluating along the line (a t, b t)/(a^2+b^2)
    Rational k = out.form.a * out.form.a + out.form.b * out.form.b;
    Poly t = Poly::variable(1, 0);
    std::vector<Poly> line{t * (out.form.a / k), t * (out.form.b / k)};
    Poly phi(1);
    if (out.form.b != 0) {
        phi = hs.components[0].substitute(line) / out.form.b;
    } else {
        phi = -hs.components[1].substitute(line) / out.form.a;
    }
    out.form.phi = poly_to_expr(phi);

    // exact reconstruction check
    PolyMap rebuilt = make_planar_poly(out.form);
    if (!(rebuilt == f)) {
        out.failure = "NotPlanarNormalizable: reconstruction does not reproduce the map "
                      "(certificate failure for a proven-unipotent input)";
        return out;
    }
    out.ok = true;
    return out;
}

bool planar_invariant_check(const PolyMap& f, const Rational& a, const Rational& b) {
    PolyMap h = perturbation(f);
    RatVec h0 = h.eval(RatVec{Rational(0), Rational(0)});
    Poly combo = h.components[0] * a + h.components[1] * b -
                 Poly::constant(2, a * h0[0] + b * h0[1]);
    return combo.is_zero();
}

} // namespace unimap
