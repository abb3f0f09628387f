#include <doctest.h>

#include <cstdint>

#include "alignsim/rational.hpp"
#include "alignsim/rng.hpp"

using namespace alignsim;

TEST_CASE("BigInt round trips through decimal strings") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(123456789012345678ll).to_string() == "123456789012345678");
    CHECK(BigInt::from_string("987654321098765432109876543210").to_string() ==
          "987654321098765432109876543210");
    CHECK(BigInt::from_string("-42") == BigInt(-42));
}

TEST_CASE("BigInt arithmetic agrees with 128-bit reference on random values") {
    RngStream rng(20240913, 0);
    for (int t = 0; t < 2000; ++t) {
        long long a = static_cast<long long>(rng.next_u64() >> 16) - (1ll << 46);
        long long b = static_cast<long long>(rng.next_u64() >> 16) - (1ll << 46);
        BigInt A(a), B(b);
        CHECK((A + B).to_int64() == a + b);
        CHECK((A - B).to_int64() == a - b);
        __int128 prod = static_cast<__int128>(a) * b;
        BigInt P = A * B;
        __int128 got = 0;
        bool neg = P.sign() < 0;
        for (char c : P.abs().to_string()) got = got * 10 + (c - '0');
        bool product_matches = (neg ? -got : got) == prod;
        CHECK(product_matches);
        if (b != 0) {
            BigInt q, r;
            BigInt::divmod(A, B, q, r);
            CHECK(q.to_int64() == a / b);
            CHECK(r.to_int64() == a % b);
        }
    }
}

TEST_CASE("BigInt gcd and binomial") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
    CHECK(BigInt::binomial(20, 10) == BigInt(184756));
    CHECK(BigInt::binomial(88, 8).to_string() == "64276915527");
    CHECK(BigInt::binomial(5, 9) == BigInt(0));
}

TEST_CASE("BigInt shifts") {
    BigInt one(1);
    BigInt shifted = (one << 100) >> 100;
    CHECK(shifted == one);
    CHECK(BigInt::pow2(40) == (one << 40));
    CHECK((BigInt(7) << 3) == BigInt(56));
    CHECK((BigInt(-56) >> 3) == BigInt(-7));
    CHECK(BigInt::pow2(10).bit_length() == 11);
}

TEST_CASE("Rational reduces and compares exactly") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) * Rational(3, 5) == Rational(1, 5));
    CHECK(Rational(7, 2) - Rational(1, 2) == Rational(3));
    CHECK(Rational(1, 3) / Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(Rational(-5, 3).floor() == BigInt(-2));
    CHECK(Rational(-5, 3).ceil() == BigInt(-1));
    CHECK(Rational(5, 3).floor() == BigInt(1));
    CHECK(Rational(2, 5).pow(3) == Rational(8, 125));
    CHECK(Rational(2, 5).pow(-2) == Rational(25, 4));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("Rational random arithmetic is consistent") {
    RngStream rng(7, 7);
    for (int t = 0; t < 500; ++t) {
        long long an = static_cast<long long>(rng.next_below(2001)) - 1000;
        long long ad = 1 + static_cast<long long>(rng.next_below(50));
        long long bn = static_cast<long long>(rng.next_below(2001)) - 1000;
        long long bd = 1 + static_cast<long long>(rng.next_below(50));
        Rational a(an, ad), b(bn, bd);
        CHECK((a + b) - b == a);
        CHECK((a - b) + b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK((a * b) == (b * a));
    }
}

TEST_CASE("Rational parsing rejects junk") {
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("2/x"), std::invalid_argument);
}

TEST_CASE("Rational parsing") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("50") == Rational(50));
    CHECK(Rational::parse("0.4") == Rational(2, 5));
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("2.5e-3") == Rational(1, 400));
    CHECK(Rational::parse("1e3") == Rational(1000));
}

TEST_CASE("Rational decimal strings") {
    CHECK(Rational(1, 2).decimal_string(12) == "0.5");
    CHECK(Rational(31, 128).decimal_string(12) == "0.2421875");
    CHECK(Rational(0).decimal_string(12) == "0");
    CHECK(Rational(-3, 2).decimal_string(12) == "-1.5");
    CHECK(Rational(1, 3).decimal_string(5) == "0.33333");
    CHECK(Rational(2, 3).decimal_string(5) == "0.66667");
    CHECK(Rational(1000000).decimal_string(12) == "1000000");
    CHECK(Rational(1, 100000).decimal_string(3) == "1e-5");
    CHECK(Rational(999999, 1).decimal_string(3) == "1e+6");
    CHECK(Rational(12345, 10).decimal_string(12) == "1234.5");
}

TEST_CASE("Rational fraction strings") {
    CHECK(Rational(6, 3).fraction_string() == "2");
    CHECK(Rational(155, 640).fraction_string() == "31/128");
    CHECK(Rational(-1, 2).fraction_string() == "-1/2");
}
