// Certified enclosures for ln, the natural-log entropy function, and the
// Bernoulli relative entropy, over exact rational arguments.
//
// Everything is computed as an exact rational interval [lo, hi] that provably
// contains the true value (atanh series with an explicit tail bound), so a
// comparison against a rational threshold is a certified verdict, never a
// floating-point one. Interval width shrinks geometrically in `terms`; the
// default is far more precision than any check here needs.

#pragma once

#include <optional>

#include "alignsim/rational.hpp"

namespace alignsim {

struct RatInterval {
    Rational lo, hi;

    static RatInterval point(const Rational& v) { return {v, v}; }

    RatInterval operator-() const { return {-hi, -lo}; }
    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return a + (-b);
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b);
    RatInterval scaled(const Rational& c) const {
        return c.sign() >= 0 ? RatInterval{lo * c, hi * c} : RatInterval{hi * c, lo * c};
    }

    // Tri-state certified comparisons; nullopt means the interval straddles
    // the threshold and more terms would be needed.
    std::optional<bool> certainly_lt(const Rational& t) const {
        if (hi < t) return true;
        if (lo >= t) return false;
        return std::nullopt;
    }
    std::optional<bool> certainly_gt(const Rational& t) const {
        if (lo > t) return true;
        if (hi <= t) return false;
        return std::nullopt;
    }

    double mid_double() const { return ((lo + hi) * Rational(1, 2)).to_double(); }
};

// ln 2 (cached after the first call).
const RatInterval& ln2_interval();

// ln q for rational q > 0.
RatInterval ln_interval(const Rational& q, int terms = 28);

// H(x) = -x ln x - (1-x) ln(1-x) in nats, for 0 <= x <= 1.
RatInterval entropy_interval(const Rational& x, int terms = 28);

// D(a || p) = a ln(a/p) + (1-a) ln((1-a)/(1-p)) in nats, for 0 <= a <= 1 and
// 0 < p < 1. This is the Chernoff large-deviation rate for the sample mean of
// Bernoulli(p) variables reaching level a.
RatInterval bernoulli_kl_interval(const Rational& a, const Rational& p, int terms = 28);

} // namespace alignsim
