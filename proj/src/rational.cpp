#include "alignsim/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace alignsim {

namespace {

constexpr uint64_t kBase = 1ull << 32;

} // namespace

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    uint64_t mag = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
    limbs_.push_back(static_cast<uint32_t>(mag & 0xffffffffu));
    if (mag >> 32) limbs_.push_back(static_cast<uint32_t>(mag >> 32));
}

BigInt::BigInt(unsigned long long v) {
    if (v == 0) return;
    sign_ = 1;
    limbs_.push_back(static_cast<uint32_t>(v & 0xffffffffu));
    if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& lo = a.size() >= b.size() ? b : a;
    const auto& hi = a.size() >= b.size() ? a : b;
    std::vector<uint32_t> out;
    out.reserve(hi.size() + 1);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        out.push_back(static_cast<uint32_t>(s & 0xffffffffu));
        carry = s >> 32;
    }
    if (carry) out.push_back(static_cast<uint32_t>(carry));
    return out;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    out.reserve(a.size());
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (d < 0) { d += static_cast<int64_t>(kBase); borrow = 1; } else { borrow = 0; }
        out.push_back(static_cast<uint32_t>(d));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int m = cmp_mag(a.limbs_, b.limbs_);
    return a.sign_ >= 0 ? m : -m;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
        r.sign_ = a.sign_;
        r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
    } else {
        int m = BigInt::cmp_mag(a.limbs_, b.limbs_);
        if (m == 0) return BigInt();
        if (m > 0) {
            r.sign_ = a.sign_;
            r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
        } else {
            r.sign_ = b.sign_;
            r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a.limbs_[i];
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            uint64_t cur = r.limbs_[i + j] + carry + ai * b.limbs_[j];
            r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        size_t k = i + b.limbs_.size();
        while (carry) {
            uint64_t cur = r.limbs_[k] + carry;
            r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator<<(unsigned k) const {
    if (sign_ == 0 || k == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    unsigned words = k / 32, bits = k % 32;
    r.limbs_.assign(limbs_.size() + words + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        uint64_t v = static_cast<uint64_t>(limbs_[i]) << bits;
        r.limbs_[i + words] |= static_cast<uint32_t>(v & 0xffffffffu);
        r.limbs_[i + words + 1] |= static_cast<uint32_t>(v >> 32);
    }
    r.trim();
    return r;
}

BigInt BigInt::operator>>(unsigned k) const {
    if (sign_ == 0) return *this;
    unsigned words = k / 32, bits = k % 32;
    if (words >= limbs_.size()) return BigInt();
    BigInt r;
    r.sign_ = sign_;
    r.limbs_.assign(limbs_.size() - words, 0);
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
        uint64_t v = limbs_[i + words] >> bits;
        if (bits && i + words + 1 < limbs_.size())
            v |= static_cast<uint64_t>(limbs_[i + words + 1]) << (32 - bits);
        r.limbs_[i] = static_cast<uint32_t>(v);
    }
    r.trim();
    return r;
}

unsigned BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    unsigned top = 32;
    uint32_t v = limbs_.back();
    while (top > 0 && !(v & (1u << (top - 1)))) --top;
    return static_cast<unsigned>((limbs_.size() - 1) * 32) + top;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    int m = cmp_mag(a.limbs_, b.limbs_);
    if (m < 0) { q = BigInt(); r = a; return; }

    // shift-subtract long division on magnitudes
    BigInt rem;
    BigInt quo;
    const unsigned abits = a.bit_length();
    const unsigned bbits = b.bit_length();
    BigInt babs = b.abs();
    BigInt shifted = babs << (abits - bbits);
    BigInt aabs = a.abs();
    quo.limbs_.assign((abits - bbits) / 32 + 1, 0);
    quo.sign_ = 1;
    rem = aabs;
    for (int k = static_cast<int>(abits - bbits); k >= 0; --k) {
        if (cmp_mag(rem.limbs_, shifted.limbs_) >= 0) {
            rem = rem - shifted;
            quo.limbs_[k / 32] |= (1u << (k % 32));
        }
        shifted = shifted >> 1;
    }
    quo.trim();
    rem.trim();
    int qs = a.sign_ * b.sign_;
    quo.sign_ = quo.limbs_.empty() ? 0 : qs;
    rem.sign_ = rem.limbs_.empty() ? 0 : a.sign_;
    q = quo;
    r = rem;
}

BigInt BigInt::operator/(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // binary gcd: only shifts and subtractions
    unsigned shift = 0;
    while (!a.is_odd() && !b.is_odd()) {
        a = a >> 1;
        b = b >> 1;
        ++shift;
    }
    while (!a.is_odd()) a = a >> 1;
    while (!b.is_zero()) {
        while (!b.is_odd()) b = b >> 1;
        if (cmp(a, b) > 0) std::swap(a, b);
        b = b - a;
    }
    return a << shift;
}

BigInt BigInt::pow2(unsigned k) { return BigInt(1) << k; }

BigInt BigInt::pow10(unsigned k) {
    BigInt r(1), ten(10);
    for (unsigned i = 0; i < k; ++i) r = r * ten;
    return r;
}

BigInt BigInt::binomial(unsigned long n, unsigned long k) {
    if (k > n) return BigInt();
    if (k > n - k) k = n - k;
    BigInt r(1);
    for (unsigned long i = 1; i <= k; ++i) {
        r = r * BigInt(static_cast<long long>(n - k + i));
        r = r / BigInt(static_cast<long long>(i));
    }
    return r;
}

BigInt BigInt::from_string(std::string_view s) {
    BigInt r;
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("BigInt: bad digit in numeral");
        r = r * BigInt(10) + BigInt(s[i] - '0');
    }
    if (neg) r = -r;
    return r;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> chunks; // base 10^9, little-endian
    BigInt cur = abs();
    const BigInt chunk(1000000000ll);
    while (!cur.is_zero()) {
        BigInt q, r;
        divmod(cur, chunk, q, r);
        chunks.push_back(r.limbs_.empty() ? 0u : r.limbs_[0]);
        cur = q;
    }
    std::string out;
    if (sign_ < 0) out.push_back('-');
    out += std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string piece = std::to_string(chunks[i]);
        out += std::string(9 - piece.size(), '0') + piece;
    }
    return out;
}

bool BigInt::fits_int64() const {
    if (limbs_.size() > 2) return false;
    if (limbs_.size() < 2) return true;
    uint64_t mag = (static_cast<uint64_t>(limbs_[1]) << 32) | limbs_[0];
    return sign_ > 0 ? mag <= 0x7fffffffffffffffull : mag <= 0x8000000000000000ull;
}

long long BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: does not fit in int64");
    uint64_t mag = 0;
    if (!limbs_.empty()) mag = limbs_[0];
    if (limbs_.size() > 1) mag |= static_cast<uint64_t>(limbs_[1]) << 32;
    return sign_ < 0 ? -static_cast<long long>(mag) : static_cast<long long>(mag);
}

long double BigInt::to_long_double() const {
    long double v = 0.0L;
    for (size_t i = limbs_.size(); i-- > 0;) v = v * 4294967296.0L + limbs_[i];
    return sign_ < 0 ? -v : v;
}

// ---------------------------------------------------------------------------

namespace {

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Rational::Rational(BigInt num, BigInt den) {
    if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den.sign() < 0) {
        num = -num;
        den = -den;
    }
    if (num.is_zero()) {
        num_ = BigInt();
        den_ = BigInt(1);
        return;
    }
    // word-sized values reduce without bignum division
    if (num.fits_int64() && den.fits_int64()) {
        long long n = num.to_int64(), d = den.to_int64();
        uint64_t g = gcd_u64(n < 0 ? ~static_cast<uint64_t>(n) + 1 : static_cast<uint64_t>(n),
                             static_cast<uint64_t>(d));
        if (g > 1) {
            num_ = BigInt(n / static_cast<long long>(g));
            den_ = BigInt(d / static_cast<long long>(g));
        } else {
            num_ = std::move(num);
            den_ = std::move(den);
        }
        return;
    }
    BigInt g = BigInt::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        return Rational(BigInt::from_string(s.substr(0, slash)),
                        BigInt::from_string(s.substr(slash + 1)));
    }
    auto epos = s.find_first_of("eE");
    long long exp10 = 0;
    std::string_view mant = s;
    if (epos != std::string_view::npos) {
        exp10 = std::stoll(std::string(s.substr(epos + 1)));
        mant = s.substr(0, epos);
    }
    auto dot = mant.find('.');
    std::string digits;
    if (dot == std::string_view::npos) {
        digits = std::string(mant);
    } else {
        digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
        exp10 -= static_cast<long long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits == "+" || digits == "-")
        throw std::invalid_argument("Rational: bad literal");
    BigInt num = BigInt::from_string(digits);
    BigInt den(1);
    if (exp10 > 0)
        num = num * BigInt::pow10(static_cast<unsigned>(exp10));
    else if (exp10 < 0)
        den = BigInt::pow10(static_cast<unsigned>(-exp10));
    return Rational(num, den);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::abs() const {
    Rational r;
    r.num_ = num_.abs();
    r.den_ = den_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

int Rational::cmp(const Rational& a, const Rational& b) {
    return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

BigInt Rational::floor() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (num_.sign() < 0 && !r.is_zero()) q = q - BigInt(1);
    return q;
}

BigInt Rational::ceil() const {
    BigInt q, r;
    BigInt::divmod(num_, den_, q, r);
    if (num_.sign() > 0 && !r.is_zero()) q = q + BigInt(1);
    return q;
}

Rational Rational::pow(int e) const {
    if (e == 0) return Rational(1);
    Rational base = e > 0 ? *this : Rational(1) / *this;
    int n = e > 0 ? e : -e;
    Rational r(1);
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

std::string Rational::fraction_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rational::decimal_string(int significant) const {
    if (significant < 1) significant = 1;
    if (num_.is_zero()) return "0";
    // Scale so that the integer quotient carries at least `significant`+1
    // digits, then round to `significant`.
    BigInt a = num_.abs();
    // decimal exponent estimate from bit lengths: floor(log10(a/den)) +- 1
    long approx = static_cast<long>((static_cast<long long>(a.bit_length()) -
                                     static_cast<long long>(den_.bit_length())) * 30103 / 100000);
    long shift = significant + 2 - approx;
    if (shift < 0) shift = 0;
    BigInt scaled = a * BigInt::pow10(static_cast<unsigned>(shift));
    BigInt q = scaled / den_;
    std::string digits = q.to_string();
    long exp10 = static_cast<long>(digits.size()) - 1 - shift; // value ~ d.ddd * 10^exp10
    if (static_cast<int>(digits.size()) > significant) {
        bool round_up = digits[significant] >= '5';
        digits = digits.substr(0, significant);
        if (round_up) {
            int i = static_cast<int>(digits.size()) - 1;
            while (i >= 0 && digits[i] == '9') digits[i--] = '0';
            if (i < 0) {
                digits.insert(digits.begin(), '1');
                ++exp10;
                digits.pop_back();
            } else {
                ++digits[i];
            }
        }
    }
    // strip trailing zeros of the significand
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string sign = num_.sign() < 0 ? "-" : "";
    if (exp10 >= -4 && exp10 < significant) {
        std::string out;
        if (exp10 >= 0) {
            if (static_cast<long>(digits.size()) > exp10 + 1) {
                out = digits.substr(0, exp10 + 1) + "." + digits.substr(exp10 + 1);
            } else {
                out = digits + std::string(exp10 + 1 - digits.size(), '0');
            }
        } else {
            out = "0." + std::string(-exp10 - 1, '0') + digits;
        }
        return sign + out;
    }
    std::string out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += (exp10 >= 0 ? "e+" : "e-") + std::to_string(exp10 >= 0 ? exp10 : -exp10);
    return sign + out;
}

double Rational::to_double() const {
    return static_cast<double>(num_.to_long_double() / den_.to_long_double());
}

} // namespace alignsim
