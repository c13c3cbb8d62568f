#include "unimap/poly.hpp"

#include <algorithm>
#include <atomic>

#include "unimap/errors.hpp"

namespace unimap {

namespace {
std::atomic<std::size_t> g_term_cap{2'000'000};
} // namespace

std::size_t poly_term_cap() { return g_term_cap.load(); }
void set_poly_term_cap(std::size_t cap) { g_term_cap.store(cap); }

void Poly::check_cap() const {
    if (terms_.size() > poly_term_cap()) {
        throw ResourceLimit("polynomial term count " + std::to_string(terms_.size()) +
                            " exceeds cap " + std::to_string(poly_term_cap()));
    }
}

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_[Monomial(nvars, 0)] = c;
    return p;
}

Poly Poly::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw Error("variable index out of range");
    Poly p(nvars);
    Monomial m(nvars, 0);
    m[index] = 1;
    p.terms_[m] = 1;
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    // graded order: last term has maximal degree
    return static_cast<int>(monomial_degree(terms_.rbegin()->first));
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Monomial(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::set_coefficient(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != nvars_) throw Error("monomial arity mismatch");
    if (c == 0) {
        terms_.erase(m);
    } else {
        terms_[m] = c;
    }
}

Rational Poly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::operator-() const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable count mismatch");
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    check_cap();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable count mismatch");
    for (const auto& [m, c] : o.terms_) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    check_cap();
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly out = *this;
    out += o;
    return out;
}

Poly Poly::operator-(const Poly& o) const {
    Poly out = *this;
    out -= o;
    return out;
}

Poly Poly::operator*(const Poly& o) const {
    if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable count mismatch");
    Poly out(nvars_);
    Monomial m(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
            auto it = out.terms_.find(m);
            if (it == out.terms_.end()) {
                out.terms_.emplace(m, ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
        out.check_cap();
    }
    return out;
}

Poly Poly::operator*(const Rational& c) const {
    Poly out(nvars_);
    if (c == 0) return out;
    for (const auto& [m, v] : terms_) out.terms_[m] = v * c;
    return out;
}

Poly Poly::operator/(const Rational& c) const {
    if (c == 0) throw Error("division by zero rational");
    Poly out(nvars_);
    for (const auto& [m, v] : terms_) out.terms_[m] = v / c;
    return out;
}

bool Poly::operator<(const Poly& o) const {
    // lexicographic on ordered (monomial, coefficient) streams
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    GradedLexLess less;
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        if (less(a->first, b->first)) return true;
        if (less(b->first, a->first)) return false;
        if (a->second != b->second) return a->second < b->second;
    }
    return a == terms_.end() && b != o.terms_.end();
}

Poly Poly::pow(unsigned e) const {
    Poly result = Poly::constant(nvars_, 1);
    Poly base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return result;
}

Poly Poly::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw Error("derivative variable out of range");
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial d = m;
        d[var] -= 1;
        out.terms_[d] = c * static_cast<long>(m[var]);
    }
    return out;
}

Rational Poly::eval(const RatVec& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw DimensionMismatch("evaluation point arity mismatch");
    // memoize powers per variable
    std::vector<std::vector<Rational>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(Rational(1));
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < nvars_; ++i) {
            auto e = m[i];
            if (!e) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
            term *= pw[e];
        }
        sum += term;
    }
    return sum;
}

double Poly::eval(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw DimensionMismatch("evaluation point arity mismatch");
    double sum = 0;
    for (const auto& [m, c] : terms_) {
        double term = to_double(c);
        for (int i = 0; i < nvars_; ++i) {
            for (std::uint32_t k = 0; k < m[i]; ++k) term *= point[i];
        }
        sum += term;
    }
    return sum;
}

Poly Poly::substitute(const std::vector<Poly>& args) const {
    if (static_cast<int>(args.size()) != nvars_) throw DimensionMismatch("substitution arity mismatch");
    int out_vars = nvars_ == 0 ? 0 : args[0].nvars();
    for (const auto& a : args) {
        if (a.nvars() != out_vars) throw DimensionMismatch("substitution arguments disagree on variable count");
    }
    std::vector<std::vector<Poly>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(Poly::constant(out_vars, 1));
    Poly sum(out_vars);
    for (const auto& [m, c] : terms_) {
        Poly term = Poly::constant(out_vars, c);
        for (int i = 0; i < nvars_; ++i) {
            auto e = m[i];
            if (!e) continue;
            auto& pw = powers[i];
            while (pw.size() <= e) pw.push_back(pw.back() * args[i]);
            term = term * pw[e];
        }
        sum += term;
    }
    return sum;
}

Poly Poly::reindex(int new_nvars, const std::vector<int>& map) const {
    if (static_cast<int>(map.size()) != nvars_) throw DimensionMismatch("reindex map arity mismatch");
    Poly out(new_nvars);
    for (const auto& [m, c] : terms_) {
        Monomial nm(new_nvars, 0);
        for (int i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (map[i] < 0 || map[i] >= new_nvars) throw Error("reindex target out of range");
            nm[map[i]] += m[i];
        }
        out.terms_[nm] += c;
        if (out.terms_[nm] == 0) out.terms_.erase(nm);
    }
    return out;
}

Poly Poly::homogeneous_part(unsigned degree) const {
    Poly out(nvars_);
    for (const auto& [m, c] : terms_) {
        if (monomial_degree(m) == degree) out.terms_[m] = c;
    }
    return out;
}

bool Poly::depends_only_on_vars_from(int first_allowed) const {
    for (const auto& [m, c] : terms_) {
        for (int i = 0; i < first_allowed && i < nvars_; ++i) {
            if (m[i] != 0) return false;
        }
    }
    return true;
}

bool Poly::uses_var(int var) const {
    for (const auto& [m, c] : terms_) {
        if (var < nvars_ && m[var] != 0) return true;
    }
    return false;
}

std::string Poly::to_string(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::string s;
    // print highest degree first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        bool lead = s.empty();
        Rational a = c;
        if (a < 0) {
            s += lead ? "-" : " - ";
            a = -a;
        } else if (!lead) {
            s += " + ";
        }
        std::string vars;
        for (int i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += var_names[i];
            if (m[i] > 1) vars += "^" + std::to_string(m[i]);
        }
        if (vars.empty()) {
            s += unimap::to_string(a);
        } else {
            if (a != 1) s += unimap::to_string(a) + "*";
            s += vars;
        }
    }
    return s;
}

std::string Poly::to_string() const {
    std::vector<std::string> names;
    names.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i) names.push_back("x" + std::to_string(i + 1));
    return to_string(names);
}

int uni_degree(const Poly& p) {
    if (p.nvars() != 1) throw Error("univariate operation on multivariate polynomial");
    return p.total_degree();
}

Rational uni_leading_coeff(const Poly& p) {
    if (p.is_zero()) return 0;
    return p.terms().rbegin()->second;
}

std::pair<Poly, Poly> uni_divmod(const Poly& p, const Poly& d) {
    if (d.is_zero()) throw Error("univariate division by zero polynomial");
    Poly q(1), r = p;
    int dd = uni_degree(d);
    Rational lc = uni_leading_coeff(d);
    while (!r.is_zero() && uni_degree(r) >= dd) {
        int k = uni_degree(r) - dd;
        Rational c = uni_leading_coeff(r) / lc;
        Poly t(1);
        t.set_coefficient(Monomial{static_cast<std::uint32_t>(k)}, c);
        q += t;
        r -= t * d;
    }
    return {q, r};
}

Poly uni_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = uni_divmod(a, b).second;
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = a / uni_leading_coeff(a); // monic representative
    return a;
}

} // namespace unimap
