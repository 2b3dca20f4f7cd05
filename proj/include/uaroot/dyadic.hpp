#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace uaroot {

// Exact dyadic rational mant * 2^-shift. Every finite double is one, so
// products of sampled doubles can be compared without rounding; this is what
// makes the per-draw inequality checks exact rather than tolerance-based.
struct Dyadic {
    boost::multiprecision::cpp_int mant;
    std::int64_t shift = 0;  // value = mant / 2^shift

    static Dyadic one() { return Dyadic{1, 0}; }

    static Dyadic from_double(double v) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("Dyadic::from_double: need a finite nonnegative value");
        if (v == 0.0) return Dyadic{0, 0};
        int exp = 0;
        const double frac = std::frexp(v, &exp);  // v = frac * 2^exp, frac in [0.5, 1)
        const auto mant53 = static_cast<std::int64_t>(std::ldexp(frac, 53));
        return Dyadic{boost::multiprecision::cpp_int(mant53), 53 - exp};
    }

    Dyadic& operator*=(const Dyadic& other) {
        mant *= other.mant;
        shift += other.shift;
        return *this;
    }

    friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

    friend bool operator<=(const Dyadic& a, const Dyadic& b) {
        if (a.shift >= b.shift) return a.mant <= b.mant << static_cast<unsigned>(a.shift - b.shift);
        return a.mant << static_cast<unsigned>(b.shift - a.shift) <= b.mant;
    }
};

}  // namespace uaroot
