#include "alignsim/logbounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace alignsim {

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
    Rational lo = std::min({c1, c2, c3, c4});
    Rational hi = std::max({c1, c2, c3, c4});
    return {lo, hi};
}

namespace {

// atanh(t) = sum_{j>=0} t^(2j+1)/(2j+1), |t| < 1.
// The truncated sum underestimates |atanh| and the tail after J terms is at
// most |t|^(2J+1) / ((2J+1)(1-t^2)).
RatInterval atanh_interval(const Rational& t, int terms) {
    if (t.is_zero()) return RatInterval::point(Rational(0));
    Rational t2 = t * t;
    if (t2 >= Rational(1)) throw std::domain_error("atanh_interval: |t| must be < 1");
    Rational term = t;
    Rational sum = t;
    for (int j = 1; j < terms; ++j) {
        term *= t2;
        sum += term * Rational(1, 2 * j + 1);
    }
    Rational tail = (term * t2).abs() / (Rational(2 * terms + 1) * (Rational(1) - t2));
    if (t.sign() > 0) return {sum, sum + tail};
    return {sum - tail, sum};
}

} // namespace

const RatInterval& ln2_interval() {
    // ln 2 = 2 atanh(1/3)
    static const RatInterval v = [] {
        RatInterval a = atanh_interval(Rational(1, 3), 40);
        return RatInterval{a.lo + a.lo, a.hi + a.hi};
    }();
    return v;
}

RatInterval ln_interval(const Rational& q, int terms) {
    if (q.sign() <= 0) throw std::domain_error("ln_interval: argument must be positive");
    if (q == Rational(1)) return RatInterval::point(Rational(0));
    // write q = m * 2^e with m in [2/3, 4/3]; then t = (m-1)/(m+1) in [-1/5, 1/7]
    long e = static_cast<long>(q.num().bit_length()) - static_cast<long>(q.den().bit_length());
    auto make_m = [&](long ee) {
        if (ee >= 0) return Rational(q.num(), q.den() * BigInt::pow2(static_cast<unsigned>(ee)));
        return Rational(q.num() * BigInt::pow2(static_cast<unsigned>(-ee)), q.den());
    };
    Rational m = make_m(e);
    while (m > Rational(4, 3)) { ++e; m = make_m(e); }
    while (m < Rational(2, 3)) { --e; m = make_m(e); }
    Rational t = (m - Rational(1)) / (m + Rational(1));
    RatInterval a = atanh_interval(t, terms);
    RatInterval lnm{a.lo + a.lo, a.hi + a.hi};
    RatInterval e_ln2 = ln2_interval().scaled(Rational(e));
    return lnm + e_ln2;
}

RatInterval entropy_interval(const Rational& x, int terms) {
    if (x.sign() < 0 || x > Rational(1))
        throw std::domain_error("entropy_interval: argument must be in [0,1]");
    if (x.is_zero() || x == Rational(1)) return RatInterval::point(Rational(0));
    RatInterval a = (-ln_interval(x, terms)).scaled(x);
    RatInterval b = (-ln_interval(Rational(1) - x, terms)).scaled(Rational(1) - x);
    return a + b;
}

RatInterval bernoulli_kl_interval(const Rational& a, const Rational& p, int terms) {
    if (a.sign() < 0 || a > Rational(1))
        throw std::domain_error("bernoulli_kl_interval: a must be in [0,1]");
    if (p.sign() <= 0 || p >= Rational(1))
        throw std::domain_error("bernoulli_kl_interval: p must be in (0,1)");
    RatInterval out = RatInterval::point(Rational(0));
    if (!a.is_zero()) out = out + ln_interval(a / p, terms).scaled(a);
    if (a != Rational(1))
        out = out + ln_interval((Rational(1) - a) / (Rational(1) - p), terms).scaled(Rational(1) - a);
    return out;
}

} // namespace alignsim
