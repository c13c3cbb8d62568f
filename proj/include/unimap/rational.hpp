#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace unimap {

// Exact arbitrary-precision rational. mpq_class keeps gcd(|num|, den) = 1
// and den > 0 once canonicalized; every constructor here canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Renders "p/q" with q > 0, or "p" when q = 1.
inline std::string to_string(const Rational& q) {
    return q.get_str();
}

Rational rational_from_string(const std::string& text);

Rational rational_pow(const Rational& base, unsigned long exp);

inline double to_double(const Rational& q) { return q.get_d(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

using RatVec = std::vector<Rational>;

std::string to_string(const RatVec& v); // "(a, b, ...)"

} // namespace unimap
