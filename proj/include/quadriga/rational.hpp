#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace quadriga {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 2^e as an exact rational, e may be negative.
Rational pow2(long e);

// Number of base-2 digits of m >= 0; digit_len(0) == 1 (the single digit "0").
int digit_len(const BigInt& m);

// Smallest t with m <= 2^t, for integer m >= 1.
int ceil_log2(const BigInt& m);

// Smallest integer t with r <= 2^t, for rational r > 0. May be negative.
long ceil_log2(const Rational& r);

// Largest integer t with 2^t <= r, for rational r > 0. May be negative.
long floor_log2(const Rational& r);

struct Interval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator-(const Interval& o) const { return {lo - o.hi, hi - o.lo}; }
    Interval& operator+=(const Interval& o) {
        lo += o.lo;
        hi += o.hi;
        return *this;
    }
    // Scaling by a nonnegative exact weight.
    friend Interval operator*(const Rational& w, const Interval& iv) { return {w * iv.lo, w * iv.hi}; }
};

// Certified bounds on log2(r) for rational r > 0: lo <= log2 r <= hi and
// hi - lo <= 2^-frac_bits + 2^-(frac_bits+4). Exact integer arithmetic
// throughout; intermediate mantissas are rounded outward to a dyadic grid so
// sizes stay bounded.
Interval log2_bounds(const Rational& r, int frac_bits);

// Bounds on -log2(r), r in (0, 1].
Interval neg_log2_bounds(const Rational& r, int frac_bits);

// Serialization convention: "numerator/denominator" in decimal.
std::string rational_to_string(const Rational& r);
Rational rational_from_string(std::string_view s);

// Dyadic rounding to multiples of 2^-frac_bits.
Rational dyadic_floor(const Rational& r, int frac_bits);
Rational dyadic_ceil(const Rational& r, int frac_bits);

}  // namespace quadriga
