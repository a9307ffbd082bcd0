#include "forge/bignat.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace forge {

namespace mp = boost::multiprecision;

BigNat BigNat::from_string(const std::string& digits) {
    if (digits.empty()) throw Error("empty decimal string");
    for (char c : digits) {
        if (c < '0' || c > '9') throw Error("not a decimal digit string: " + digits);
    }
    return BigNat(mp::cpp_int(digits));
}

BigNat BigNat::two_pow(std::uint64_t e) {
    mp::cpp_int one = 1;
    return BigNat(one << e);
}

BigNat BigNat::div(const BigNat& d) const {
    if (d.is_zero()) throw DivideByZero("BigNat division by zero");
    return BigNat(v_ / d.v_);
}

BigNat BigNat::mod(const BigNat& d) const {
    if (d.is_zero()) throw DivideByZero("BigNat modulo by zero");
    return BigNat(v_ % d.v_);
}

BigNat BigNat::pow(std::uint64_t e) const {
    return BigNat(mp::pow(v_, unsigned(e)));
}

std::uint64_t BigNat::floor_log2() const {
    if (is_zero()) throw Error("log2 of zero");
    return mp::msb(v_);
}

bool BigNat::fits_u64() const {
    return v_ <= mp::cpp_int(std::numeric_limits<std::uint64_t>::max());
}

std::uint64_t BigNat::to_u64() const {
    if (!fits_u64()) throw Error("BigNat does not fit in 64 bits");
    return v_.convert_to<std::uint64_t>();
}

std::uint64_t ceil_log2(const BigNat& x) {
    if (x.is_zero()) throw Error("log2 of zero");
    std::uint64_t f = x.floor_log2();
    return (x == BigNat::two_pow(f)) ? f : f + 1;
}

std::uint64_t ceil_log2_at_least_one(const BigNat& x) {
    BigNat y = x < BigNat(2) ? BigNat(2) : x;
    return ceil_log2(y);
}

BigNat iroot(const BigNat& x, std::uint64_t k) {
    if (k == 0) throw Error("0th root");
    if (k == 1 || x.is_zero()) return x;
    BigNat lo(0);
    BigNat hi = BigNat::two_pow(x.bit_length() / k + 1);
    // invariant: lo^k <= x < hi^k
    while (hi - lo > BigNat(1)) {
        BigNat mid = (lo + hi).div(BigNat(2));
        if (mid.pow(k) <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

BigNat iroot_ceil(const BigNat& x, std::uint64_t k) {
    BigNat r = iroot(x, k);
    return (r.pow(k) == x) ? r : r + BigNat(1);
}

}  // namespace forge
