#include <doctest.h>

#include "forge/bignat.hpp"
#include "forge/error.hpp"
#include "forge/rational.hpp"

using namespace forge;

TEST_CASE("arithmetic matches 64-bit reference on small operands") {
    // exhaustive sampling below 2^20 with a fixed stride
    for (std::uint64_t a = 0; a < (1u << 20); a += 37641) {
        for (std::uint64_t b = 1; b < (1u << 20); b += 52361) {
            BigNat A(a), B(b);
            CHECK((A + B).to_u64() == a + b);
            CHECK((A * B).to_u64() == a * b);
            CHECK(A.div(B).to_u64() == a / b);
            CHECK(A.mod(B).to_u64() == a % b);
            if (a >= b) CHECK((A - B).to_u64() == a - b);
        }
    }
}

TEST_CASE("subtraction below zero is an error, not wraparound") {
    CHECK_THROWS_AS(BigNat(3) - BigNat(5), Underflow);
    CHECK((BigNat(5) - BigNat(5)).is_zero());
}

TEST_CASE("pow, shifts, logs") {
    CHECK(BigNat(2).pow(100) == BigNat::two_pow(100));
    CHECK((BigNat(1) << 64).floor_log2() == 64);
    CHECK((BigNat::two_pow(65) >> 64).to_u64() == 2);
    CHECK(BigNat(1).floor_log2() == 0);
    CHECK(ceil_log2(BigNat(1)) == 0);
    CHECK(ceil_log2(BigNat(2)) == 1);
    CHECK(ceil_log2(BigNat(3)) == 2);
    CHECK(ceil_log2(BigNat(1024)) == 10);
    CHECK(ceil_log2(BigNat(1025)) == 11);
    // the paper's ceil-log widths never collapse to zero: log applies to max(x,2)
    CHECK(ceil_log2_at_least_one(BigNat(1)) == 1);
    CHECK(ceil_log2_at_least_one(BigNat(2)) == 1);
    CHECK_THROWS_AS(BigNat(0).floor_log2(), Error);
}

TEST_CASE("decimal string round trip, digits only") {
    BigNat x = BigNat::from_string("123456789012345678901234567890");
    CHECK(x.str() == "123456789012345678901234567890");
    CHECK_THROWS_AS(BigNat::from_string("1e5"), Error);
    CHECK_THROWS_AS(BigNat::from_string("-3"), Error);
    CHECK_THROWS_AS(BigNat::from_string(""), Error);
}

TEST_CASE("integer roots") {
    CHECK(iroot(BigNat(8), 3).to_u64() == 2);
    CHECK(iroot(BigNat(7), 3).to_u64() == 1);
    CHECK(iroot_ceil(BigNat(7), 3).to_u64() == 2);
    CHECK(iroot_ceil(BigNat(8), 3).to_u64() == 2);
    CHECK(iroot_ceil(BigNat(9), 3).to_u64() == 3);
    for (std::uint64_t v = 1; v < 5000; v += 7) {
        BigNat r = iroot(BigNat(v), 2);
        CHECK(r.pow(2) <= BigNat(v));
        CHECK((r + BigNat(1)).pow(2) > BigNat(v));
    }
}

TEST_CASE("rationals reduce and compare exactly") {
    Rational half(BigNat(2), BigNat(4));
    CHECK(half.num().to_u64() == 1);
    CHECK(half.den().to_u64() == 2);
    CHECK(half < Rational(BigNat(2), BigNat(3)));
    CHECK(Rational(BigNat(10), BigNat(5)).is_integer());
    CHECK(Rational(BigNat(7), BigNat(2)).floor().to_u64() == 3);
    CHECK(Rational::parse("3/6") == half);
    CHECK(Rational::parse("5") == Rational(BigNat(5)));
    CHECK_THROWS_AS(Rational(BigNat(1), BigNat(0)), DivideByZero);
}
