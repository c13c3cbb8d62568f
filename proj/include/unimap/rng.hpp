#pragma once

#include <cstdint>
#include <vector>

#include "unimap/rational.hpp"

namespace unimap {

// xorshift-based generator with a fixed mapping to doubles, so seeded runs
// are bit-reproducible independent of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        std::uint64_t x = state_;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Uniform integer in [lo, hi], inclusive.
    long uniform_int(long lo, long hi) {
        return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::vector<double> point(int dim, double lo, double hi) {
        std::vector<double> p(dim);
        for (auto& c : p) c = uniform(lo, hi);
        return p;
    }

    // Small random rational with numerator in [-num_range, num_range] and
    // denominator in [1, den_range].
    Rational rational(long num_range, long den_range = 1) {
        return rat(uniform_int(-num_range, num_range), uniform_int(1, den_range));
    }

    RatVec rational_point(int dim, long num_range, long den_range = 1) {
        RatVec p;
        p.reserve(dim);
        for (int i = 0; i < dim; ++i) p.push_back(rational(num_range, den_range));
        return p;
    }

private:
    std::uint64_t state_;
};

} // namespace unimap
