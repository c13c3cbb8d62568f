#include "unimap/rational.hpp"

#include "unimap/errors.hpp"

namespace unimap {

Rational rational_from_string(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) {
        throw Error("invalid rational literal: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

Rational rational_pow(const Rational& base, unsigned long exp) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    return out; // base canonical => powers are coprime already
}

std::string to_string(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    s += ")";
    return s;
}

} // namespace unimap
