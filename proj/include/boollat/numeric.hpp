#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace boollat {

// Exact arbitrary-precision count. Counts in this library are never floats:
// antichain counts overflow 64 bits already at n=7.
using BigCount = boost::multiprecision::cpp_int;

// Exact rational, used for bounds that need not be integers (e.g. 2^n/V(n,t)).
using Rational = boost::multiprecision::cpp_rational;

inline BigCount pow2(unsigned n) {
    BigCount r = 1;
    return r << n;
}

// Binomial coefficient, 0 when k > n.
inline BigCount binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (n - k < k) k = n - k;
    BigCount r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact: r is binomial(n-k+i, i) after this step
    }
    return r;
}

// Sum of binomial(n, i) for i in [k, n].
inline BigCount binom_at_least(unsigned n, unsigned k) {
    BigCount r = 0;
    for (unsigned i = k; i <= n; ++i) r += binomial(n, i);
    return r;
}

inline std::string to_decimal_string(const BigCount& v) { return v.str(); }

inline BigCount ceil_rational(const Rational& r) {
    BigCount num = boost::multiprecision::numerator(r);
    BigCount den = boost::multiprecision::denominator(r);
    if (num >= 0) return (num + den - 1) / den;
    return -((-num) / den);
}

inline BigCount floor_rational(const Rational& r) {
    BigCount num = boost::multiprecision::numerator(r);
    BigCount den = boost::multiprecision::denominator(r);
    if (num >= 0) return num / den;
    return -((-num + den - 1) / den);
}

// Parses "3", "3/2" or "1.5" into an exact rational.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigCount num(s.substr(0, slash));
        BigCount den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigCount den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        return Rational(BigCount(digits), den);
    }
    return Rational(BigCount(s));
}

// log2 of a positive big integer, usable far beyond double range.
inline double log2_big(const BigCount& c) {
    if (c <= 0) throw std::domain_error("log2 of non-positive count");
    unsigned bits = boost::multiprecision::msb(c);
    if (bits <= 900) return std::log2(c.convert_to<double>());
    BigCount shifted = c >> (bits - 52);
    return static_cast<double>(bits - 52) + std::log2(shifted.convert_to<double>());
}

// Fixed-point decimal rendering of an exact rational (round half up),
// deterministic across platforms. Used for report fields like ratios.
inline std::string rational_to_fixed(const Rational& r, unsigned digits = 6) {
    BigCount num = boost::multiprecision::numerator(r);
    BigCount den = boost::multiprecision::denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    BigCount scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    BigCount scaled = (num * scale * 2 + den) / (den * 2); // round half up
    BigCount ip = scaled / scale, fp = scaled % scale;
    std::string frac = fp.str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    std::string s = ip.str() + "." + frac;
    return neg ? "-" + s : s;
}

} // namespace boollat
