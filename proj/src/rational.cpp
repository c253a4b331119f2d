#include "quadriga/rational.hpp"

#include <cassert>

#include "quadriga/error.hpp"

namespace quadriga {

Rational pow2(long e) {
    BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
    if (e >= 0) return Rational(p);
    return Rational(1, p);
}

int digit_len(const BigInt& m) {
    assert(m >= 0);
    if (m == 0) return 1;
    return static_cast<int>(boost::multiprecision::msb(m)) + 1;
}

int ceil_log2(const BigInt& m) {
    assert(m >= 1);
    int t = static_cast<int>(boost::multiprecision::msb(m));
    if ((BigInt(1) << static_cast<unsigned>(t)) == m) return t;
    return t + 1;
}

long ceil_log2(const Rational& r) {
    if (r <= 0) raise(ErrorKind::Parameter, "ceil_log2 requires a positive value");
    const BigInt num = numerator(r), den = denominator(r);
    long t = digit_len(num) - digit_len(den);
    // r <= 2^t  <=>  num <= den * 2^t. Bit-length estimate is off by at most
    // one, so a short correction walk suffices.
    auto le_pow2 = [&](long e) {
        if (e >= 0) return num <= (den << static_cast<unsigned>(e));
        return (num << static_cast<unsigned>(-e)) <= den;
    };
    while (!le_pow2(t)) ++t;
    while (t > std::numeric_limits<long>::min() && le_pow2(t - 1)) --t;
    return t;
}

long floor_log2(const Rational& r) {
    if (r <= 0) raise(ErrorKind::Parameter, "floor_log2 requires a positive value");
    long t = ceil_log2(r);
    // 2^t >= r; floor is t when equal, else t-1.
    if (pow2(t) == r) return t;
    return t - 1;
}

Rational dyadic_floor(const Rational& r, int frac_bits) {
    BigInt scaled_num = numerator(r) << static_cast<unsigned>(frac_bits);
    BigInt q, rem;
    boost::multiprecision::divide_qr(scaled_num, denominator(r), q, rem);
    if (rem != 0 && r < 0) q -= 1;
    return Rational(q, BigInt(1) << static_cast<unsigned>(frac_bits));
}

Rational dyadic_ceil(const Rational& r, int frac_bits) {
    BigInt scaled_num = numerator(r) << static_cast<unsigned>(frac_bits);
    BigInt q, rem;
    boost::multiprecision::divide_qr(scaled_num, denominator(r), q, rem);
    if (rem != 0 && r > 0) q += 1;
    return Rational(q, BigInt(1) << static_cast<unsigned>(frac_bits));
}

Interval log2_bounds(const Rational& r, int frac_bits) {
    if (r <= 0) raise(ErrorKind::Parameter, "log2_bounds requires a positive value");
    const long e = floor_log2(r);
    const Rational mantissa = r * pow2(-e);  // in [1, 2)

    // Classic digit-extraction: repeatedly square the mantissa, shifting out
    // one fractional bit of log2 per round. Each path keeps its mantissa on a
    // dyadic grid with directed rounding, so the results stay certified
    // bounds while the integers stay small.
    const int grid = frac_bits + 16;
    auto run = [&](bool lower) {
        Rational m = mantissa;
        Rational f = 0;
        for (int i = 1; i <= frac_bits; ++i) {
            m = m * m;
            m = lower ? dyadic_floor(m, grid) : dyadic_ceil(m, grid);
            if (m >= 2) {
                m /= 2;
                f += pow2(-i);
            }
        }
        return f;
    };
    Rational lo = Rational(e) + run(true);
    Rational hi = Rational(e) + run(false) + pow2(-frac_bits);
    return {lo, hi};
}

Interval neg_log2_bounds(const Rational& r, int frac_bits) {
    Interval b = log2_bounds(r, frac_bits);
    return {-b.hi, -b.lo};
}

std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(s)));
        BigInt num(std::string(s.substr(0, slash)));
        BigInt den(std::string(s.substr(slash + 1)));
        if (den == 0) raise(ErrorKind::Parameter, "zero denominator");
        return Rational(num, den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        raise(ErrorKind::Parameter, "malformed rational: " + std::string(s));
    }
}

}  // namespace quadriga
