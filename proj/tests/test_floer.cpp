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

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "floertool/floer.hpp"
#include "floertool/io.hpp"
#include "floertool/selftest.hpp"

using namespace floertool;

namespace {

std::vector<FieldElement> gf8_cubic_roots() {
    const FieldDescriptor f2 = make_field(1);
    return find_roots({FieldElement::one(f2), FieldElement::zero(f2), FieldElement::one(f2),
                       FieldElement::one(f2)},
                      make_field(3));
}

// delta(P x P) should be delta tensor id + id tensor delta in the
// lexicographic product basis.
NovikovMatrix kronecker_sum(const NovikovMatrix& a, const NovikovMatrix& b) {
    const int na = a.rows();
    const int nb = b.rows();
    NovikovMatrix out(na * nb, na * nb, a.field());
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (int k = 0; k < nb; ++k) out.add_at(i * nb + k, j * nb + k, a.at(i, j));
        }
    for (int i = 0; i < na; ++i)
        for (int k = 0; k < nb; ++k)
            for (int l = 0; l < nb; ++l) {
                if (b.at(k, l).is_zero()) continue;
                out.add_at(i * nb + k, i * nb + l, b.at(k, l));
            }
    return out;
}

std::multiset<std::string> row_multiset(const NovikovMatrix& m, int i) {
    std::multiset<std::string> out;
    for (int j = 0; j < m.cols(); ++j)
        if (!m.at(i, j).is_zero()) out.insert(io::to_string(m.at(i, j)));
    return out;
}

} // namespace

TEST_CASE("segment complex: the two strips cancel") {
    auto [p, c] = builtin_cpn(1);
    const FloerComplex k = build_complex(p, c, trivial_rho(1));
    CHECK(k.obstruction.is_zero());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) REQUIRE(k.delta.at(i, j).is_zero());
    CHECK(check_obstruction(k));
}

TEST_CASE("facet masks commute and square to the identity") {
    auto [p, c] = builtin_blowup_cp3();
    std::vector<std::uint32_t> masks;
    for (const auto& f : p.facets) masks.push_back(facet_mask(f.normal, p.n));
    for (std::uint32_t mi : masks)
        for (std::uint32_t mj : masks)
            for (std::uint32_t b = 0; b < 8; ++b) {
                REQUIRE(((b ^ mi) ^ mj) == ((b ^ mj) ^ mi));
                REQUIRE(((b ^ mi) ^ mi) == b);
            }
}

TEST_CASE("blow-up complex entries and rank at the diagonal critical points") {
    auto [p, c] = builtin_blowup_cp3();
    for (const FieldElement& xi : gf8_cubic_roots()) {
        const FieldDescriptor f8 = make_field(3);
        const RhoAssignment rho{f8, {xi, xi, xi}};
        const FloerComplex k = build_complex(p, c, rho);

        const FieldElement eta = gf_sqrt(xi);
        const FieldElement x = gf_pow(eta, 3) + gf_pow(eta, -3);
        REQUIRE(x == eta);
        CHECK(k.obstruction.is_zero());

        // every row and column consists of four entries eta T^(1/2)
        const NovikovPoly entry = NovikovPoly::term(f8, Rational(1, 2), eta);
        const std::multiset<std::string> expected_row = {
            io::to_string(entry), io::to_string(entry), io::to_string(entry), io::to_string(entry)};
        for (int i = 0; i < 8; ++i) {
            REQUIRE(row_multiset(k.delta, i) == expected_row);
            REQUIRE(row_multiset(k.delta.transpose(), i) == expected_row);
        }

        CHECK(check_obstruction(k));
        CHECK(rank(k.delta) == 2);

        const HFResult hf = hf_rank(p, c, rho);
        CHECK(hf.defined);
        CHECK(hf.delta_rank == 2);
        CHECK(hf.hf_rank == 4);
    }
}

TEST_CASE("delta squared equals the obstruction times the identity") {
    SECTION("cpn(2) with trivial rho: delta^2 = T * id") {
        auto [p, c] = builtin_cpn(2);
        const FloerComplex k = build_complex(p, c, trivial_rho(2));
        CHECK(k.obstruction == NovikovPoly::t_power(make_field(1), Rational(1)));
        CHECK(check_obstruction(k));
        const NovikovMatrix square = multiply(k.delta, k.delta);
        CHECK(square == NovikovMatrix::scaled_identity(4, k.obstruction));
    }

    SECTION("random corpus sample") {
        const auto corpus = regression_corpus();
        std::mt19937_64 rng(71);
        for (int t = 0; t < 25; ++t) {
            const auto& inst = corpus[rng() % corpus.size()];
            const auto norm = normalize_presentation(inst.p, inst.c);
            const FloerComplex k = build_complex(norm.polytope, norm.point, inst.rho);
            CAPTURE(inst.label);
            REQUIRE(check_obstruction(k));
        }
    }
}

TEST_CASE("the obstruction is the potential value, literally") {
    const auto corpus = regression_corpus();
    std::mt19937_64 rng(72);
    for (int t = 0; t < 10; ++t) {
        const auto& inst = corpus[rng() % corpus.size()];
        const auto norm = normalize_presentation(inst.p, inst.c);
        const FloerComplex k = build_complex(norm.polytope, norm.point, inst.rho);
        REQUIRE(k.obstruction == potential_value(norm.polytope, norm.point, inst.rho));
    }
}

TEST_CASE("HF ranks of the projective spaces") {
    SECTION("odd: cpn(1) and cpn(3) give 2 and 4") {
        auto [p1, c1] = builtin_cpn(1);
        const HFResult h1 = hf_rank(p1, c1, trivial_rho(1));
        REQUIRE(h1.defined);
        CHECK(h1.hf_rank == 2);

        auto [p3, c3] = builtin_cpn(3);
        const HFResult h3 = hf_rank(p3, c3, trivial_rho(3));
        REQUIRE(h3.defined);
        CHECK(h3.delta_rank == 2);
        CHECK(h3.hf_rank == 4);
    }

    SECTION("even: cpn(2) is obstructed by a single term") {
        auto [p, c] = builtin_cpn(2);
        const HFResult h = hf_rank(p, c, trivial_rho(2));
        CHECK_FALSE(h.defined);
        CHECK_FALSE(h.delta_rank.has_value());
        CHECK_FALSE(h.hf_rank.has_value());
        REQUIRE(h.obstruction.terms().size() == 1);
        CHECK(h.obstruction.terms().front().exponent == Rational(1));
    }
}

TEST_CASE("product differential is the Kronecker sum of the factors") {
    const auto check_product = [](const FanoPolytope& p, const InteriorPoint& c,
                                  const RhoAssignment& rho) {
        const FloerComplex k = build_complex(p, c, rho);
        auto [q, cq] = product(p, c, p, c);
        RhoAssignment doubled{rho.field, rho.values};
        doubled.values.insert(doubled.values.end(), rho.values.begin(), rho.values.end());
        // the product presentation interleaves the convention facets; restore it
        const auto norm = normalize_presentation(q, cq);
        const FloerComplex kq = build_complex(norm.polytope, norm.point, doubled);
        REQUIRE(kq.delta == kronecker_sum(k.delta, k.delta));
    };

    auto [p1, c1] = builtin_cpn(1);
    check_product(p1, c1, trivial_rho(1));

    auto [p2, c2] = builtin_cpn(2);
    const FieldDescriptor f4 = make_field(2);
    const FieldElement w(f4, 0b10);
    check_product(p2, c2, RhoAssignment{f4, {w, w}});

    auto [pb, cb] = builtin_blowup_cp3();
    const FieldElement xi = gf8_cubic_roots().front();
    check_product(pb, cb, RhoAssignment{make_field(3), {xi, xi, xi}});
}

TEST_CASE("product bounds") {
    SECTION("cpn(2) at its GF(4) critical point") {
        auto [p, c] = builtin_cpn(2);
        const FieldDescriptor f4 = make_field(2);
        const FieldElement w(f4, 0b10);
        const ProductBound b = product_bound(p, c, RhoAssignment{f4, {w, w}});
        REQUIRE(b.product_hf.defined);
        CHECK(b.product_hf.hf_rank == 4);
        CHECK(b.bound == 2);
    }

    SECTION("segment: the product complex is the tensor square of zero") {
        auto [p, c] = builtin_cpn(1);
        const ProductBound b = product_bound(p, c, trivial_rho(1));
        CHECK(b.product_hf.hf_rank == 4);
        CHECK(b.bound == 2);
        const HFResult direct = hf_rank(p, c, trivial_rho(1));
        CHECK(direct.hf_rank == 2);
    }

    SECTION("rp_product(1,2) reproduces rank 2^(k+j)") {
        auto [p, c] = builtin_rp_product(1, 2);
        const HFResult h = hf_rank(p, c, trivial_rho(6));
        REQUIRE(h.defined);
        CHECK(h.delta_rank == 28);
        CHECK(h.hf_rank == 8);
    }

    SECTION("a non-critical rho is rejected") {
        auto [p, c] = builtin_cpn(2);
        const FieldDescriptor f4 = make_field(2);
        const RhoAssignment mixed{f4, {FieldElement(f4, 0b10), FieldElement::one(f4)}};
        CHECK_THROWS_AS(product_bound(p, c, mixed), domain_error);
    }
}

TEST_CASE("HF rank is associative over triple products") {
    auto [p, c] = builtin_cpn(1);
    const RhoAssignment rho3 = trivial_rho(3);
    auto [pp, cc] = product(p, c, p, c);
    auto [left, lc] = product(pp, cc, p, c);
    auto [right, rc] = product(p, c, pp, cc);
    const HFResult hl = hf_rank(left, lc, rho3);
    const HFResult hr = hf_rank(right, rc, rho3);
    REQUIRE(hl.defined);
    CHECK(hl.hf_rank == hr.hf_rank);
    CHECK(energies(left, lc) == energies(right, rc));
    CHECK(hl.hf_rank == 8); // tensor cube of the zero differential
}

TEST_CASE("nonvanishing criterion over a corpus sample") {
    const auto corpus = regression_corpus();
    int defined_seen = 0;
    for (int t = 0; t < 40 || defined_seen < 5; ++t) {
        if (t >= static_cast<int>(corpus.size())) break;
        const auto& inst = corpus[static_cast<std::size_t>(t)];
        const auto norm = normalize_presentation(inst.p, inst.c);
        const HFResult h = hf_rank(norm.polytope, norm.point, inst.rho);
        if (!h.defined) continue;
        ++defined_seen;
        bool critical = true;
        for (const auto& z : grad_components(norm.polytope, norm.point, inst.rho))
            critical = critical && z.is_zero();
        CAPTURE(inst.label);
        REQUIRE((*h.hf_rank > 0) == critical);
        REQUIRE(*h.hf_rank >= 0); // 2^n - 2 rank(delta) >= 0 forced by delta^2 = 0
    }
    REQUIRE(defined_seen >= 5);
}

TEST_CASE("hf_rank invariances") {
    auto [p, c] = builtin_blowup_cp3();
    const FieldElement xi = gf8_cubic_roots().front();
    const RhoAssignment rho{make_field(3), {xi, xi, xi}};
    const HFResult base = hf_rank(p, c, rho);

    SECTION("global exponent rescale") {
        FanoPolytope scaled = p;
        InteriorPoint cs = c;
        const Rational s(5, 3);
        for (auto& f : scaled.facets) f.lambda *= s;
        for (auto& x : cs.c) x *= s;
        const HFResult h = hf_rank(scaled, cs, rho);
        CHECK(h.defined == base.defined);
        CHECK(h.delta_rank == base.delta_rank);
        CHECK(h.hf_rank == base.hf_rank);
    }

    SECTION("unimodular renormalization with a translation") {
        // u = A w + b with A a shear plus swap, b a rational shift
        const std::vector<std::vector<long long>> a = {{1, 2, 0}, {0, 1, 0}, {1, 1, 1}};
        const std::vector<Rational> b = {Rational(1, 2), Rational(-1), Rational(3)};
        FanoPolytope tp;
        tp.n = 3;
        for (const auto& f : p.facets) {
            Facet nf;
            nf.normal.assign(3, 0);
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    nf.normal[static_cast<std::size_t>(i)] +=
                        a[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                        f.normal[static_cast<std::size_t>(k)];
            Rational shift(0);
            for (int k = 0; k < 3; ++k)
                shift += b[static_cast<std::size_t>(k)] *
                         Rational(f.normal[static_cast<std::size_t>(k)]);
            nf.lambda = f.lambda - shift;
            tp.facets.push_back(std::move(nf));
        }
        // c' = A^-1 (c - b) computed against this specific A by hand:
        // A^-1 = [[1,-2,0],[0,1,0],[-1,1,1]]
        const std::vector<std::vector<long long>> ainv = {{1, -2, 0}, {0, 1, 0}, {-1, 1, 1}};
        InteriorPoint tc;
        tc.c.assign(3, Rational(0));
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                tc.c[static_cast<std::size_t>(i)] +=
                    Rational(ainv[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) *
                    (c.c[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]);
        REQUIRE(validate(tp, tc).ok);
        REQUIRE_FALSE(in_convention(tp));

        // hf_rank normalizes back to the canonical frame, so the same rho applies
        const HFResult h = hf_rank(tp, tc, rho);
        CHECK(h.defined == base.defined);
        CHECK(h.delta_rank == base.delta_rank);
        CHECK(h.hf_rank == base.hf_rank);
    }

    SECTION("permutation of the non-convention facets") {
        FanoPolytope perm = p;
        std::swap(perm.facets[3], perm.facets[4]);
        const HFResult h = hf_rank(perm, c, rho);
        CHECK(h.delta_rank == base.delta_rank);
        CHECK(h.hf_rank == base.hf_rank);
    }

    SECTION("arbitrary facet permutation with the trivial local system") {
        auto [p3, c3] = builtin_cpn(3);
        const HFResult expect = hf_rank(p3, c3, trivial_rho(3));
        FanoPolytope perm = p3;
        std::rotate(perm.facets.begin(), perm.facets.begin() + 1, perm.facets.end());
        const HFResult h = hf_rank(perm, c3, trivial_rho(3));
        CHECK(h.defined == expect.defined);
        CHECK(h.hf_rank == expect.hf_rank);
    }
}

TEST_CASE("build_complex contract errors") {
    auto [p, c] = builtin_cpn(2);

    FanoPolytope shifted = p;
    shifted.facets[0].lambda = Rational(-1);
    InteriorPoint cs = c;
    CHECK_THROWS_AS(build_complex(shifted, cs, trivial_rho(2)), domain_error);

    CHECK_THROWS_AS(build_complex(p, c, trivial_rho(3)), domain_error);

    const FieldDescriptor f4 = make_field(2);
    RhoAssignment zero_rho{f4, {FieldElement::zero(f4), FieldElement::one(f4)}};
    CHECK_THROWS_AS(build_complex(p, c, zero_rho), domain_error);
}
