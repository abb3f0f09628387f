// Arbitrary-precision integers and exact rationals.
//
// All verdicts in this project (oracle checks, event thresholds, block-count
// moments) are computed in exact arithmetic; floating point is only used for
// reporting. The magnitudes involved are modest (a few thousand bits at most),
// so a compact sign+magnitude bignum with schoolbook multiplication is enough.

#pragma once

#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alignsim {

class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned long long v);
    BigInt(unsigned long v) : BigInt(static_cast<unsigned long long>(v)) {}
    BigInt(unsigned v) : BigInt(static_cast<unsigned long long>(v)) {}

    static BigInt from_string(std::string_view s);
    static BigInt pow2(unsigned k);
    static BigInt pow10(unsigned k);
    static BigInt binomial(unsigned long n, unsigned long k);
    static BigInt gcd(BigInt a, BigInt b); // nonnegative result

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1u); }
    unsigned bit_length() const;

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& b) { *this = *this + b; return *this; }
    BigInt& operator-=(const BigInt& b) { *this = *this - b; return *this; }
    BigInt& operator*=(const BigInt& b) { *this = *this * b; return *this; }

    // Truncated division: quotient rounds toward zero, remainder carries the
    // dividend's sign. Throws on division by zero.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& b) const;
    BigInt operator%(const BigInt& b) const;

    BigInt operator<<(unsigned k) const;
    BigInt operator>>(unsigned k) const;

    static int cmp(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        int c = cmp(a, b);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string to_string() const;
    bool fits_int64() const;
    long long to_int64() const; // throws if out of range
    long double to_long_double() const;

private:
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b); // a >= b
    void trim();

    int sign_ = 0;                 // -1, 0, +1
    std::vector<uint32_t> limbs_;  // little-endian base 2^32, empty iff zero
};

// Exact rational, always stored reduced with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long v) : num_(v), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(BigInt num, BigInt den);

    // Accepts "a", "a/b", and decimal literals like "0.4" or "-1.25e-3".
    static Rational parse(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational abs() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
    Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
    Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    static int cmp(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a, b) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a, b);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    BigInt floor() const;
    BigInt ceil() const;
    Rational pow(int e) const;

    // "a/b", or just "a" when the value is an integer.
    std::string fraction_string() const;
    // Decimal with the given number of significant digits (round half away
    // from zero), fixed or scientific notation as printf %g would pick.
    std::string decimal_string(int significant = 12) const;
    double to_double() const;

private:
    BigInt num_, den_;
};

} // namespace alignsim
