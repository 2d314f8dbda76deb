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

// Exact arithmetic in the tower of fields GF(2^m), 1 <= m <= 16, with the
// canonical (Conway) modulus per degree. The Conway choice makes the
// generator-power embeddings g_m -> g_{lm}^((2^lm-1)/(2^m-1)) compatible ring
// homomorphisms across the whole tower, so values computed in different
// layers can be compared after embedding. Elements are polynomial-basis bit
// vectors packed in a word; multiplication runs on per-degree log/antilog
// tables built lazily from the modulus.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "floertool/errors.hpp"

namespace floertool {

inline constexpr int kMaxFieldDegree = 16;

// Conway polynomials C(2, m); bit k is the coefficient of x^k.
inline constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kCanonicalModulus = {
    0, // unused
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x5B,    // x^6 + x^4 + x^3 + x + 1
    0x83,    // x^7 + x + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x46F,   // x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
    0x805,   // x^11 + x^2 + 1
    0x10EB,  // x^12 + x^7 + x^6 + x^5 + x^3 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x40A9,  // x^14 + x^7 + x^5 + x^3 + 1
    0x8035,  // x^15 + x^5 + x^4 + x^2 + 1
    0x1002D, // x^16 + x^5 + x^3 + x^2 + 1
};

struct FieldDescriptor {
    int degree = 1;
    std::uint32_t modulus = 0x3;

    friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

inline FieldDescriptor make_field(int m) {
    if (m < 1 || m > kMaxFieldDegree)
        throw domain_error("field degree " + std::to_string(m) + " outside table range [1, 16]");
    return FieldDescriptor{m, kCanonicalModulus[static_cast<std::size_t>(m)]};
}

namespace detail {

// Product of bit-polynomials reduced mod the degree-m modulus. Used only to
// build the tables; everything hot goes through them.
inline std::uint32_t gf_mul_slow(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, int m) {
    std::uint32_t acc = 0;
    for (int i = 0; (b >> i) != 0; ++i)
        if ((b >> i) & 1u) acc ^= a << i;
    for (int d = 2 * m - 2; d >= m; --d)
        if ((acc >> d) & 1u) acc ^= modulus << (d - m);
    return acc;
}

struct FieldTables {
    std::uint32_t q = 1;              // multiplicative order 2^m - 1
    std::vector<std::uint16_t> exp;   // size 2q; exp[t] = bits of g^t
    std::vector<std::uint32_t> log;   // size 2^m; log[bits] for bits != 0
};

inline const FieldTables& field_tables(int m) {
    static std::array<std::unique_ptr<FieldTables>, kMaxFieldDegree + 1> cache;
    static std::array<std::once_flag, kMaxFieldDegree + 1> once;
    std::call_once(once[static_cast<std::size_t>(m)], [m] {
        auto t = std::make_unique<FieldTables>();
        const std::uint32_t modulus = kCanonicalModulus[static_cast<std::size_t>(m)];
        const std::uint32_t q = (1u << m) - 1u;
        const std::uint32_t g = (m == 1) ? 1u : 2u; // class of x, primitive for Conway moduli
        t->q = q;
        t->exp.assign(2 * static_cast<std::size_t>(q), 0);
        t->log.assign(std::size_t{1} << m, 0);
        std::uint32_t v = 1;
        for (std::uint32_t i = 0; i < q; ++i) {
            t->exp[i] = static_cast<std::uint16_t>(v);
            t->exp[i + q] = static_cast<std::uint16_t>(v);
            t->log[v] = i;
            if (i > 0 && v == 1)
                throw internal_error("modulus table entry is not primitive");
            v = gf_mul_slow(v, g, modulus, m);
        }
        if (v != 1) throw internal_error("generator order mismatch in field table");
        cache[static_cast<std::size_t>(m)] = std::move(t);
    });
    return *cache[static_cast<std::size_t>(m)];
}

} // namespace detail

/// An element of GF(2^m) in the polynomial basis; bit k of bits() is the
/// coefficient of x^k. The modulus is implied by the degree (canonical table).
class FieldElement {
public:
    FieldElement() = default;

    FieldElement(const FieldDescriptor& field, std::uint32_t bits)
        : degree_(field.degree), bits_(bits) {
        if (bits >> field.degree)
            throw domain_error("element bits exceed field degree");
    }

    static FieldElement zero(const FieldDescriptor& field) { return FieldElement(field, 0); }
    static FieldElement one(const FieldDescriptor& field) { return FieldElement(field, 1); }

    int degree() const { return degree_; }
    std::uint32_t bits() const { return bits_; }
    FieldDescriptor field() const { return make_field(degree_); }
    bool is_zero() const { return bits_ == 0; }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

private:
    int degree_ = 1;
    std::uint32_t bits_ = 0;
};

namespace detail {
inline void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.degree() != b.degree())
        throw domain_error("mixed-field operands (GF(2^" + std::to_string(a.degree()) +
                           ") vs GF(2^" + std::to_string(b.degree()) + ")); embed explicitly");
}
} // namespace detail

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    detail::require_same_field(a, b);
    return FieldElement(a.field(), a.bits() ^ b.bits());
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    detail::require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return FieldElement::zero(a.field());
    const auto& t = detail::field_tables(a.degree());
    return FieldElement(a.field(), t.exp[t.log[a.bits()] + t.log[b.bits()]]);
}

inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }

inline FieldElement inv(const FieldElement& a) {
    if (a.is_zero()) throw domain_error("inversion of zero field element");
    const auto& t = detail::field_tables(a.degree());
    return FieldElement(a.field(), t.exp[t.q - t.log[a.bits()]]);
}

/// a^e for any integer exponent; negative exponents require a != 0.
inline FieldElement gf_pow(const FieldElement& a, long long e) {
    const auto& t = detail::field_tables(a.degree());
    if (a.is_zero()) {
        if (e == 0) return FieldElement::one(a.field());
        if (e < 0) throw domain_error("negative power of zero field element");
        return a;
    }
    const long long q = t.q;
    long long r = e % q;
    if (r < 0) r += q;
    const std::uint64_t idx = static_cast<std::uint64_t>(t.log[a.bits()]) * static_cast<std::uint64_t>(r) % static_cast<std::uint64_t>(q);
    return FieldElement(a.field(), t.exp[idx]);
}

/// The unique square root: the inverse of the Frobenius map, a^(2^(m-1)).
inline FieldElement gf_sqrt(const FieldElement& a) {
    if (a.is_zero()) return a;
    const auto& t = detail::field_tables(a.degree());
    const std::uint64_t idx =
        static_cast<std::uint64_t>(t.log[a.bits()]) * (std::uint64_t{1} << (a.degree() - 1)) % t.q;
    return FieldElement(a.field(), t.exp[idx]);
}

/// Embeds GF(2^m) into GF(2^lm) via g_m -> g_lm^((2^lm-1)/(2^m-1)). With the
/// canonical moduli this is a ring homomorphism compatible across the tower.
inline FieldElement embed(const FieldElement& a, const FieldDescriptor& target) {
    const int m = a.degree();
    const int big = target.degree;
    if (big % m != 0)
        throw domain_error("cannot embed GF(2^" + std::to_string(m) + ") into GF(2^" +
                           std::to_string(big) + "): degree not a multiple");
    if (big == m) return a;
    if (a.is_zero()) return FieldElement::zero(target);
    const auto& ts = detail::field_tables(m);
    const auto& tt = detail::field_tables(big);
    const std::uint64_t stride = tt.q / ts.q;
    return FieldElement(target, tt.exp[ts.log[a.bits()] * stride % tt.q]);
}

/// All roots in the search field of a nonzero polynomial with coefficients in
/// a subfield, by exhaustive evaluation. Sorted by ascending coefficient word.
inline std::vector<FieldElement> find_roots(const std::vector<FieldElement>& coeffs,
                                            const FieldDescriptor& search) {
    if (coeffs.empty()) throw domain_error("root search on empty polynomial");
    int m = coeffs.front().degree();
    bool nonzero = false;
    for (const auto& c : coeffs) {
        detail::require_same_field(c, coeffs.front());
        nonzero = nonzero || !c.is_zero();
    }
    if (!nonzero) throw domain_error("root search on the zero polynomial");
    if (search.degree % m != 0)
        throw domain_error("search field degree must be a multiple of the coefficient field degree");

    std::vector<FieldElement> lifted;
    lifted.reserve(coeffs.size());
    for (const auto& c : coeffs) lifted.push_back(embed(c, search));

    std::vector<FieldElement> roots;
    const std::uint32_t count = 1u << search.degree;
    for (std::uint32_t bits = 0; bits < count; ++bits) {
        const FieldElement r(search, bits);
        FieldElement acc = FieldElement::zero(search);
        for (auto it = lifted.rbegin(); it != lifted.rend(); ++it) acc = acc * r + *it;
        if (acc.is_zero()) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(),
              [](const FieldElement& x, const FieldElement& y) { return x.bits() < y.bits(); });
    return roots;
}

/// Smallest d dividing m with a in GF(2^d), i.e. a^(2^d) = a.
inline int subfield_degree(const FieldElement& a) {
    const int m = a.degree();
    if (a.is_zero() || a.bits() == 1) return 1;
    const auto& t = detail::field_tables(m);
    const std::uint64_t loga = t.log[a.bits()];
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const std::uint64_t sub_q = (std::uint64_t{1} << d) - 1;
        if (loga % (t.q / sub_q) == 0) return d;
    }
    return m;
}

} // namespace floertool
