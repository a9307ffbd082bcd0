#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "forge/bignat.hpp"
#include "forge/error.hpp"

namespace forge {

// Exact non-negative rational. Used for machine speeds s_i in (0,1], the
// bounded-range checks W(1-1/n^10) <= x and the mu parameter of the
// grouped problems. Always kept in reduced form with positive denominator.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(const BigNat& num, const BigNat& den) : num_(num.raw()), den_(den.raw()) {
        if (den.is_zero()) throw DivideByZero("rational with zero denominator");
        reduce();
    }
    explicit Rational(const BigNat& n) : num_(n.raw()), den_(1) {}

    BigNat num() const { return BigNat(num_); }
    BigNat den() const { return BigNat(den_); }

    bool is_integer() const { return den_ == 1; }
    BigNat floor() const { return BigNat(num_ / den_); }

    Rational operator+(const Rational& o) const {
        return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const { return make(num_ * o.num_, den_ * o.den_); }
    Rational operator*(const BigNat& o) const { return make(num_ * o.raw(), den_); }

    // a - b with underflow error, mirroring BigNat.
    Rational operator-(const Rational& o) const {
        auto n = num_ * o.den_;
        auto m = o.num_ * den_;
        if (n < m) throw Underflow("rational subtraction underflow");
        return make(n - m, den_ * o.den_);
    }

    auto operator<=>(const Rational& o) const {
        boost::multiprecision::cpp_int a = num_ * o.den_;
        boost::multiprecision::cpp_int b = o.num_ * den_;
        return a.compare(b) <=> 0;
    }
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

    auto operator<=>(const BigNat& o) const { return *this <=> Rational(o); }
    bool operator==(const BigNat& o) const { return *this == Rational(o); }

    std::string str() const {
        return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
    }
    // Parses "p/q" or "p" (decimal digits only).
    static Rational parse(const std::string& text);

  private:
    static Rational make(boost::multiprecision::cpp_int n, boost::multiprecision::cpp_int d) {
        Rational r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        r.reduce();
        return r;
    }
    void reduce() {
        // force evaluation: gcd() yields an expression template aliasing num_/den_
        boost::multiprecision::cpp_int g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    boost::multiprecision::cpp_int num_;
    boost::multiprecision::cpp_int den_;
};

}  // namespace forge
