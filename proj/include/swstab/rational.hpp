//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace swstab {

/// Exact rational scalar used on the polynomial fast path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    return Rational(x);
}

/// Parse "123" or "1.25" into an exact rational. No exponent notation.
inline Rational rational_from_decimal(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string ip = text.substr(0, dot);
    std::string fp = text.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed number: " + text);
    BigInt num = ip.empty() ? BigInt(0) : BigInt(ip);
    BigInt den = 1;
    for (char c : fp) {
        if (c < '0' || c > '9') throw std::invalid_argument("malformed number: " + text);
        num = num * 10 + (c - '0');
        den *= 10;
    }
    return Rational(num, den);
}

inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

} // namespace swstab
