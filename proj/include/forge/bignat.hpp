#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "forge/error.hpp"

namespace forge {

// Arbitrary-precision natural number. All item values, targets and
// capacities live in this type; arithmetic is exact and subtraction below
// zero is an error rather than wraparound (the constructions keep every
// intermediate value non-negative, so underflow always signals a bug).
class BigNat {
  public:
    BigNat() : v_(0) {}
    BigNat(std::uint64_t v) : v_(v) {}  // NOLINT: implicit by design
    explicit BigNat(const boost::multiprecision::cpp_int& v) : v_(v) {
        if (v < 0) throw Underflow("BigNat from negative value");
    }

    static BigNat from_string(const std::string& digits);
    std::string str() const { return v_.str(); }

    // 2^e
    static BigNat two_pow(std::uint64_t e);

    BigNat& operator+=(const BigNat& o) {
        v_ += o.v_;
        return *this;
    }
    BigNat& operator-=(const BigNat& o) {
        if (v_ < o.v_) throw Underflow("BigNat subtraction underflow");
        v_ -= o.v_;
        return *this;
    }
    BigNat& operator*=(const BigNat& o) {
        v_ *= o.v_;
        return *this;
    }

    friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }
    friend BigNat operator-(BigNat a, const BigNat& b) { return a -= b; }
    friend BigNat operator*(BigNat a, const BigNat& b) { return a *= b; }

    BigNat div(const BigNat& d) const;
    BigNat mod(const BigNat& d) const;
    bool divisible_by(const BigNat& d) const { return mod(d).is_zero(); }

    BigNat pow(std::uint64_t e) const;

    BigNat operator<<(std::uint64_t s) const { return BigNat(v_ << s); }
    BigNat operator>>(std::uint64_t s) const { return BigNat(v_ >> s); }

    // floor(log2(x)); error on 0
    std::uint64_t floor_log2() const;
    // smallest w with x < 2^w; bit_length(0) = 0
    std::uint64_t bit_length() const { return is_zero() ? 0 : floor_log2() + 1; }
    bool bit(std::uint64_t i) const { return boost::multiprecision::bit_test(v_, unsigned(i)); }

    bool is_zero() const { return v_.is_zero(); }
    bool fits_u64() const;
    std::uint64_t to_u64() const;

    auto operator<=>(const BigNat& o) const { return v_.compare(o.v_) <=> 0; }
    bool operator==(const BigNat& o) const { return v_ == o.v_; }

    const boost::multiprecision::cpp_int& raw() const { return v_; }

  private:
    boost::multiprecision::cpp_int v_;
};

// max(⌈log2(x)⌉, with log 1 = 0); error on 0.
std::uint64_t ceil_log2(const BigNat& x);

// The paper's width formulas apply ⌈log·⌉ to quantities that can be 1 at
// desk scale; widths then are computed on max(x, 2) so no block collapses
// to zero bits.
std::uint64_t ceil_log2_at_least_one(const BigNat& x);

// Largest r with r^k <= x (integer k-th root).
BigNat iroot(const BigNat& x, std::uint64_t k);
// Smallest r with r^k >= x.
BigNat iroot_ceil(const BigNat& x, std::uint64_t k);

}  // namespace forge
