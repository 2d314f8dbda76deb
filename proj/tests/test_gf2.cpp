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

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "floertool/gf2.hpp"

using namespace floertool;

namespace {

// GF(2)[x] helpers for the table oracles; polynomials are plain bit words.
std::uint64_t poly2_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t acc = 0;
    for (int i = 0; (b >> i) != 0; ++i)
        if ((b >> i) & 1u) acc ^= a << i;
    return acc;
}

std::uint64_t poly2_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = 63 - __builtin_clzll(m);
    while (a >= (std::uint64_t{1} << dm)) {
        const int da = 63 - __builtin_clzll(a);
        if (da < dm) break;
        a ^= m << (da - dm);
    }
    return a;
}

bool irreducible_by_trial_division(std::uint64_t f, int degree) {
    for (int d = 1; 2 * d <= degree; ++d)
        for (std::uint64_t g = (std::uint64_t{1} << d); g < (std::uint64_t{2} << d); ++g)
            if (poly2_mod(f, g) == 0) return false;
    return true;
}

int multiplicative_order(const FieldElement& a) {
    REQUIRE(!a.is_zero());
    FieldElement acc = a;
    int order = 1;
    while (!(acc == FieldElement::one(a.field()))) {
        acc = acc * a;
        ++order;
    }
    return order;
}

FieldElement pow_by_squaring(FieldElement a, unsigned long long e) {
    FieldElement acc = FieldElement::one(a.field());
    while (e) {
        if (e & 1) acc = acc * a;
        a = a * a;
        e >>= 1;
    }
    return acc;
}

} // namespace

TEST_CASE("canonical modulus table entries are monic and irreducible") {
    for (int m = 1; m <= kMaxFieldDegree; ++m) {
        const FieldDescriptor fd = make_field(m);
        CAPTURE(m);
        CHECK((fd.modulus >> m) == 1u); // monic of degree m
        CHECK(irreducible_by_trial_division(fd.modulus, m));
    }
}

TEST_CASE("make_field rejects degrees outside the table") {
    CHECK_THROWS_AS(make_field(0), domain_error);
    CHECK_THROWS_AS(make_field(17), domain_error);
    CHECK_THROWS_AS(make_field(-3), domain_error);
}

TEST_CASE("small canonical moduli match the stated conventions") {
    CHECK(make_field(1).modulus == 0x3u);  // x + 1
    CHECK(make_field(2).modulus == 0x7u);  // x^2 + x + 1, the unique irreducible quadratic
    // degree 3 entry has no root in GF(2): f(0) = f(1) = 1
    const std::uint32_t f3 = make_field(3).modulus;
    CHECK((f3 & 1u) == 1u);
    CHECK((__builtin_popcount(f3) & 1) == 1);
}

TEST_CASE("GF(4) inverse of x is x+1") {
    const FieldDescriptor f4 = make_field(2);
    const FieldElement x(f4, 0b10);
    CHECK(inv(x) == FieldElement(f4, 0b11));
    CHECK(x * inv(x) == FieldElement::one(f4));
}

TEST_CASE("units satisfy a * inv(a) = 1 exhaustively for m <= 8") {
    for (int m = 1; m <= 8; ++m) {
        const FieldDescriptor fd = make_field(m);
        for (std::uint32_t bits = 1; bits < (1u << m); ++bits) {
            const FieldElement a(fd, bits);
            REQUIRE(a * inv(a) == FieldElement::one(fd));
            REQUIRE(inv(inv(a)) == a);
        }
    }
}

TEST_CASE("pow matches the repeated-squaring oracle and Fermat order") {
    const FieldDescriptor f8 = make_field(3);
    const FieldElement g(f8, 0b010);
    CHECK(gf_pow(g, 7) == FieldElement::one(f8));
    for (int m = 1; m <= 6; ++m) {
        const FieldDescriptor fd = make_field(m);
        const std::uint32_t q = (1u << m) - 1;
        for (std::uint32_t bits = 1; bits < (1u << m); ++bits) {
            const FieldElement a(fd, bits);
            REQUIRE(gf_pow(a, q) == FieldElement::one(fd));
            for (long long e : {0LL, 1LL, 2LL, 5LL, 11LL})
                REQUIRE(gf_pow(a, e) == pow_by_squaring(a, static_cast<unsigned long long>(e)));
            REQUIRE(gf_pow(a, -1) == inv(a));
            REQUIRE(gf_pow(a, -3) == inv(pow_by_squaring(a, 3)));
        }
    }
    CHECK_THROWS_AS(inv(FieldElement::zero(f8)), domain_error);
    CHECK_THROWS_AS(gf_pow(FieldElement::zero(f8), -1), domain_error);
}

TEST_CASE("mixed-field operands are rejected without an explicit embedding") {
    const FieldElement a(make_field(2), 0b10);
    const FieldElement b(make_field(3), 0b010);
    CHECK_THROWS_AS(a + b, domain_error);
    CHECK_THROWS_AS(a * b, domain_error);
}

TEST_CASE("sqrt is the inverse Frobenius") {
    const FieldDescriptor f4 = make_field(2);
    CHECK(gf_sqrt(FieldElement::zero(f4)) == FieldElement::zero(f4));
    CHECK(gf_sqrt(FieldElement::one(f4)) == FieldElement::one(f4));
    // sqrt(x) = x^2 = x + 1 in GF(4)
    CHECK(gf_sqrt(FieldElement(f4, 0b10)) == FieldElement(f4, 0b11));

    for (int m = 1; m <= 8; ++m) {
        const FieldDescriptor fd = make_field(m);
        for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
            const FieldElement a(fd, bits);
            REQUIRE(gf_sqrt(a) * gf_sqrt(a) == a);
            REQUIRE(gf_sqrt(a * a) == a);
        }
    }
}

TEST_CASE("Frobenius additivity (a+b)^2 = a^2 + b^2 exhaustively for m <= 8") {
    for (int m = 1; m <= 8; ++m) {
        const FieldDescriptor fd = make_field(m);
        for (std::uint32_t ab = 0; ab < (1u << m); ++ab)
            for (std::uint32_t bb = 0; bb < (1u << m); ++bb) {
                const FieldElement a(fd, ab);
                const FieldElement b(fd, bb);
                REQUIRE((a + b) * (a + b) == a * a + b * b);
            }
    }
}

TEST_CASE("embedding is a compatible ring homomorphism") {
    const FieldDescriptor f4 = make_field(2);
    const FieldDescriptor f16 = make_field(4);

    CHECK(embed(FieldElement::zero(f4), f16) == FieldElement::zero(f16));
    CHECK(embed(FieldElement::one(f4), f16) == FieldElement::one(f16));
    CHECK_THROWS_AS(embed(FieldElement::one(make_field(3)), f16), domain_error);

    // additive and multiplicative on all of GF(4) x GF(4) into GF(16)
    for (std::uint32_t ab = 0; ab < 4; ++ab)
        for (std::uint32_t bb = 0; bb < 4; ++bb) {
            const FieldElement a(f4, ab);
            const FieldElement b(f4, bb);
            REQUIRE(embed(a + b, f16) == embed(a, f16) + embed(b, f16));
            REQUIRE(embed(a * b, f16) == embed(a, f16) * embed(b, f16));
        }

    // multiplicative order preserved: the GF(4) generator keeps order 3
    const FieldElement g2(f4, 0b10);
    CHECK(multiplicative_order(g2) == 3);
    CHECK(multiplicative_order(embed(g2, f16)) == 3);

    // transitivity through an intermediate layer, small degrees into <= 12
    for (const auto& [lo, mid, hi] : std::vector<std::array<int, 3>>{
             {1, 2, 4}, {1, 3, 6}, {2, 4, 8}, {2, 6, 12}, {3, 6, 12}, {4, 8, 8}}) {
        const FieldDescriptor flo = make_field(lo);
        const FieldDescriptor fmid = make_field(mid);
        const FieldDescriptor fhi = make_field(hi);
        for (std::uint32_t bits = 0; bits < (1u << lo); ++bits) {
            const FieldElement a(flo, bits);
            REQUIRE(embed(embed(a, fmid), fhi) == embed(a, fhi));
        }
    }

    // homomorphism on exhaustive samples for m <= 4 into degree <= 12
    for (int m : {1, 2, 3, 4}) {
        for (int big = 2 * m; big <= 12; big += m) {
            const FieldDescriptor src = make_field(m);
            const FieldDescriptor dst = make_field(big);
            for (std::uint32_t ab = 0; ab < (1u << m); ++ab)
                for (std::uint32_t bb = 0; bb < (1u << m); ++bb) {
                    const FieldElement a(src, ab);
                    const FieldElement b(src, bb);
                    REQUIRE(embed(a * b, dst) == embed(a, dst) * embed(b, dst));
                    REQUIRE(embed(a + b, dst) == embed(a, dst) + embed(b, dst));
                }
        }
    }
}

TEST_CASE("embedded generator is a root of the source modulus (tower compatibility)") {
    // This is the property that makes cross-layer comparisons meaningful; it
    // would fail on a table typo even if each entry were irreducible.
    for (int m = 1; m <= kMaxFieldDegree; ++m) {
        for (int big = 2 * m; big <= kMaxFieldDegree; big += m) {
            const FieldDescriptor src = make_field(m);
            const FieldDescriptor dst = make_field(big);
            const FieldElement image = embed(FieldElement(src, m == 1 ? 1u : 2u), dst);
            FieldElement acc = FieldElement::zero(dst);
            for (int k = m; k >= 0; --k) {
                acc = acc * image;
                if ((src.modulus >> k) & 1u) acc = acc + FieldElement::one(dst);
            }
            CAPTURE(m, big);
            REQUIRE(acc.is_zero());
        }
    }
}

TEST_CASE("find_roots enumerates exactly the zeros") {
    const FieldDescriptor f2 = make_field(1);
    const FieldDescriptor f4 = make_field(2);
    const FieldDescriptor f8 = make_field(3);
    const FieldElement one2 = FieldElement::one(f2);
    const FieldElement zero2 = FieldElement::zero(f2);

    SECTION("x^2 + x over GF(2) in GF(4) has roots {0, 1}") {
        const auto roots = find_roots({zero2, one2, one2}, f4);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == FieldElement::zero(f4));
        CHECK(roots[1] == FieldElement::one(f4));
    }

    SECTION("x^2 + x + 1 in GF(4) has the two non-identity elements as roots") {
        const auto roots = find_roots({one2, one2, one2}, f4);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == FieldElement(f4, 0b10));
        CHECK(roots[1] == FieldElement(f4, 0b11));
    }

    SECTION("x^6 + x^4 + 1 = (x^3 + x^2 + 1)^2 in characteristic 2") {
        // squaring oracle over GF(2): coefficients of f^2 are those of f spread out
        const std::uint64_t cubic = 0b1101; // x^3 + x^2 + 1
        const std::uint64_t square = poly2_mul(cubic, cubic);
        CHECK(square == 0b1010001); // x^6 + x^4 + 1

        const auto sextic_roots =
            find_roots({one2, zero2, zero2, zero2, one2, zero2, one2}, f8);
        const auto cubic_roots = find_roots({one2, zero2, one2, one2}, f8);
        REQUIRE(sextic_roots.size() == 3);
        CHECK(sextic_roots == cubic_roots);
    }

    SECTION("cross-check against direct evaluation") {
        // x^5 + x^2 + x over GF(4), searched in GF(16)
        const FieldDescriptor f16 = make_field(4);
        const std::vector<FieldElement> poly = {FieldElement::zero(f4), FieldElement::one(f4),
                                                FieldElement(f4, 0b10), FieldElement::zero(f4),
                                                FieldElement::zero(f4), FieldElement::one(f4)};
        const auto roots = find_roots(poly, f16);
        int direct_count = 0;
        for (std::uint32_t bits = 0; bits < 16; ++bits) {
            const FieldElement r(f16, bits);
            FieldElement acc = FieldElement::zero(f16);
            for (auto it = poly.rbegin(); it != poly.rend(); ++it)
                acc = acc * r + embed(*it, f16);
            const bool is_root =
                std::find(roots.begin(), roots.end(), r) != roots.end();
            REQUIRE(acc.is_zero() == is_root);
            if (acc.is_zero()) ++direct_count;
        }
        CHECK(static_cast<std::size_t>(direct_count) == roots.size());
    }

    SECTION("prime-field coefficients lift into any layer") {
        const auto roots = find_roots({one2, one2}, f8); // x + 1
        REQUIRE(roots.size() == 1);
        CHECK(roots.front() == FieldElement::one(f8));
    }

    SECTION("error cases") {
        CHECK_THROWS_AS(find_roots({}, f4), domain_error);
        CHECK_THROWS_AS(find_roots({zero2, zero2}, f4), domain_error);
        CHECK_THROWS_AS(find_roots({FieldElement::one(f4)}, f8), domain_error);
    }
}

TEST_CASE("subfield_degree finds the minimal layer") {
    const FieldDescriptor f16 = make_field(4);
    CHECK(subfield_degree(FieldElement::zero(f16)) == 1);
    CHECK(subfield_degree(FieldElement::one(f16)) == 1);
    const FieldElement g2 = embed(FieldElement(make_field(2), 0b10), f16);
    CHECK(subfield_degree(g2) == 2);
    CHECK(subfield_degree(FieldElement(f16, 0b10)) == 4);
    for (int m = 1; m <= 8; ++m) {
        const FieldDescriptor fd = make_field(m);
        for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
            const FieldElement a(fd, bits);
            const int d = subfield_degree(a);
            REQUIRE(m % d == 0);
            // a lies in GF(2^d): a^(2^d) = a
            FieldElement frob = a;
            for (int k = 0; k < d; ++k) frob = frob * frob;
            REQUIRE(frob == a);
        }
    }
}
