#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "riesz/errors.hpp"

namespace riesz {

// Exact rational scalar. Everything in the kernel is computed with these;
// no floating point feeds any verdict.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat(long long num, long long den = 1) {
    if (den == 0) throw ParseError("zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline Rational pow_rational(const Rational& base, unsigned exponent) {
    Rational acc(1);
    for (unsigned i = 0; i < exponent; ++i) acc *= base;
    return acc;
}

// Accepts "n" or "p/q" with optional leading '-'. Rejects everything else.
inline Rational parse_rational(const std::string& text) {
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_int(text)) throw ParseError("bad rational: '" + text + "'");
        return Rational(BigInt(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || (!den.empty() && den[0] == '-'))
        throw ParseError("bad rational: '" + text + "'");
    BigInt d(den);
    if (d == 0) throw ParseError("zero denominator: '" + text + "'");
    return Rational(BigInt(num), d);
}

inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace riesz
