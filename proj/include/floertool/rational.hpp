// Copyright 2026 The floertool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "floertool/errors.hpp"

namespace floertool {

// All rational data (facet constants, interior points, Novikov exponents) is
// exact arbitrary-precision; polytope normalization can blow up denominators.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "p/q" form: lowest terms, q > 0, denominator always written.
inline std::string to_pq_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p" or "p/q" with optional leading '-' on p. Throws parse_error.
inline Rational parse_rational(std::string_view text) {
    const auto bad = [&] {
        throw parse_error("invalid rational '" + std::string(text) + "' (expected \"p\" or \"p/q\")");
    };
    if (text.empty()) bad();
    const auto slash = text.find('/');
    const auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (ch < '0' || ch > '9') return false;
        return true;
    };
    try {
        if (slash == std::string_view::npos) {
            if (!is_int(text)) bad();
            return Rational(BigInt(std::string(text)));
        }
        const std::string_view p = text.substr(0, slash);
        const std::string_view q = text.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) bad();
        const BigInt den{std::string(q)};
        if (den == 0) bad();
        return Rational(BigInt(std::string(p)), den);
    } catch (const std::exception&) {
        bad();
    }
    return Rational(0); // unreachable
}

/// Least common multiple of the denominators of a range of rationals (>= 1).
template <typename Range>
BigInt common_denominator(const Range& values) {
    BigInt d = 1;
    for (const Rational& r : values) d = lcm(d, denominator(r));
    return d;
}

inline long long to_int64_checked(const BigInt& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw internal_error("integer lattice exponent overflows 64 bits");
    return static_cast<long long>(v);
}

} // namespace floertool
