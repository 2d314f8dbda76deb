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

// The acceptance corpus and the nine acceptance criteria, shared by the
// `selftest` CLI command and the standalone acceptance runner. Everything in
// here is deterministic: the regression corpus is generated from a fixed
// seed and the probabilistic cross-checks use fixed seeds 1..5.

#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "floertool/floer.hpp"
#include "floertool/gf2.hpp"
#include "floertool/novikov.hpp"
#include "floertool/polytope.hpp"
#include "floertool/potential.hpp"
#include "floertool/rational.hpp"

namespace floertool {

struct CorpusInstance {
    std::string label;
    FanoPolytope p;
    InteriorPoint c;
    RhoAssignment rho;
};

namespace detail {

inline RhoAssignment random_rho(std::mt19937_64& rng, int n, int degree) {
    const FieldDescriptor fd = make_field(degree);
    RhoAssignment rho{fd, {}};
    const std::uint32_t q = (1u << degree) - 1u;
    for (int i = 0; i < n; ++i)
        rho.values.push_back(FieldElement(fd, 1u + static_cast<std::uint32_t>(rng() % q)));
    return rho;
}

// Convention polytope with random extra facets: always valid, with the
// interior point fixed at (1,...,1) and energies drawn from a small rational
// menu so the exponent lattices stay modest.
inline std::pair<FanoPolytope, InteriorPoint> random_polytope(std::mt19937_64& rng, int n,
                                                              int extra) {
    static const Rational menu[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                                    Rational(3)};
    FanoPolytope p;
    p.n = n;
    p.name = "random";
    for (int j = 0; j < n; ++j) {
        Facet f;
        f.normal.assign(static_cast<std::size_t>(n), 0);
        f.normal[static_cast<std::size_t>(j)] = 1;
        f.lambda = Rational(0);
        p.facets.push_back(std::move(f));
    }
    InteriorPoint c;
    c.c.assign(static_cast<std::size_t>(n), Rational(1));
    for (int t = 0; t < extra; ++t) {
        Facet f;
        f.normal.assign(static_cast<std::size_t>(n), 0);
        long long g = 0;
        while (g != 1) {
            for (int i = 0; i < n; ++i)
                f.normal[static_cast<std::size_t>(i)] = static_cast<long long>(rng() % 5) - 2;
            g = 0;
            for (long long x : f.normal) g = std::gcd(g, x);
        }
        const Rational energy = menu[rng() % 5];
        Rational dot(0);
        for (int i = 0; i < n; ++i)
            dot += c.c[static_cast<std::size_t>(i)] * Rational(f.normal[static_cast<std::size_t>(i)]);
        f.lambda = dot - energy;
        p.facets.push_back(std::move(f));
    }
    return {std::move(p), std::move(c)};
}

} // namespace detail

/// Deterministic regression corpus: builtins at standard assignments, random
/// convention polytopes over field degrees 1..6, and doubled products (whose
/// obstruction cancels, giving well-defined instances of both criticality
/// classes). Spans n <= 4 and at most 8 facets.
inline std::vector<CorpusInstance> regression_corpus() {
    std::vector<CorpusInstance> out;
    std::mt19937_64 rng(0x0F10E27001ULL);

    const auto add = [&](std::string label, std::pair<FanoPolytope, InteriorPoint> pc,
                         RhoAssignment rho) {
        out.push_back({std::move(label), std::move(pc.first), std::move(pc.second), std::move(rho)});
    };

    for (int k = 1; k <= 4; ++k)
        add("cpn(" + std::to_string(k) + ") trivial", builtin_cpn(k), trivial_rho(k));
    add("rp_product(1,1) trivial", builtin_rp_product(1, 1), trivial_rho(4));
    add("blowup_cp3 trivial", builtin_blowup_cp3(), trivial_rho(3));

    {
        const FieldDescriptor f8 = make_field(3);
        const FieldDescriptor f2 = make_field(1);
        const std::vector<FieldElement> cubic = {FieldElement::one(f2), FieldElement::zero(f2),
                                                 FieldElement::one(f2), FieldElement::one(f2)};
        for (const FieldElement& xi : find_roots(cubic, f8))
            add("blowup_cp3 diag root " + std::to_string(xi.bits()), builtin_blowup_cp3(),
                RhoAssignment{f8, {xi, xi, xi}});
    }
    {
        const FieldDescriptor f4 = make_field(2);
        for (std::uint32_t bits : {2u, 3u}) {
            const FieldElement w(f4, bits);
            add("cpn(2) at GF(4) point " + std::to_string(bits), builtin_cpn(2),
                RhoAssignment{f4, {w, w}});
        }
    }

    // random convention polytopes
    for (int t = 0; t < 60; ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int extra = 1 + static_cast<int>(rng() % std::min(4, 8 - n));
        auto pc = detail::random_polytope(rng, n, extra);
        const int degree = 1 + static_cast<int>(rng() % 6);
        auto rho = detail::random_rho(rng, n, degree);
        add("random #" + std::to_string(t), std::move(pc), std::move(rho));
    }

    // doubled products: defined instances (obstruction cancels mod 2)
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int extra = 1 + static_cast<int>(rng() % 3);
        auto pc = detail::random_polytope(rng, n, extra);
        const int degree = 1 + static_cast<int>(rng() % 6);
        auto rho = detail::random_rho(rng, n, degree);
        auto prod = product(pc.first, pc.second, pc.first, pc.second);
        RhoAssignment doubled{rho.field, rho.values};
        doubled.values.insert(doubled.values.end(), rho.values.begin(), rho.values.end());
        add("product #" + std::to_string(t), std::move(prod), std::move(doubled));
    }

    return out;
}

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

class Check {
public:
    explicit Check(int id, std::string name) {
        result_.id = id;
        result_.name = std::move(name);
        result_.pass = true;
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            result_.pass = false;
            if (!result_.detail.empty()) result_.detail += "; ";
            result_.detail += "FAILED: " + what;
        }
    }

    void note(const std::string& what) {
        if (!result_.detail.empty()) result_.detail += "; ";
        result_.detail += what;
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    CriterionResult finish(double time_limit_seconds = 0.0) {
        result_.seconds = elapsed();
        if (time_limit_seconds > 0.0 && result_.seconds > time_limit_seconds) {
            result_.pass = false;
            result_.detail += "; FAILED: exceeded " + std::to_string(time_limit_seconds) + "s";
        }
        return result_;
    }

private:
    CriterionResult result_;
    std::chrono::steady_clock::time_point start_;
};

inline bool all_zero(const std::vector<NovikovPoly>& zs) {
    for (const auto& z : zs)
        if (!z.is_zero()) return false;
    return true;
}

} // namespace detail

/// Runs the nine acceptance criteria and returns one result per criterion.
inline std::vector<CriterionResult> run_acceptance() {
    std::vector<CriterionResult> results;
    const std::vector<CorpusInstance> corpus = regression_corpus();

    { // 1: blow-up of CP^3 at the diagonal GF(8) critical points
        detail::Check check(1, "blowup_cp3 at diagonal GF(8) roots: obstruction 0, rank 2, HF 4");
        const FieldDescriptor f8 = make_field(3);
        const FieldDescriptor f2 = make_field(1);
        const std::vector<FieldElement> cubic = {FieldElement::one(f2), FieldElement::zero(f2),
                                                 FieldElement::one(f2), FieldElement::one(f2)};
        const auto roots = find_roots(cubic, f8);
        check.expect(roots.size() == 3, "x^3+x^2+1 has 3 roots in GF(8)");
        auto [p, c] = builtin_blowup_cp3();
        for (const FieldElement& xi : roots) {
            const HFResult hf = hf_rank(p, c, RhoAssignment{f8, {xi, xi, xi}});
            check.expect(hf.defined, "obstruction vanishes");
            check.expect(hf.delta_rank == 2, "delta rank 2");
            check.expect(hf.hf_rank == 4, "HF rank 4");
        }
        results.push_back(check.finish(1.0));
    }

    { // 2: odd projective spaces with the trivial local system
        detail::Check check(2, "cpn(1), cpn(3) trivial: HF ranks 2 and 4");
        auto [p1, c1] = builtin_cpn(1);
        const HFResult h1 = hf_rank(p1, c1, trivial_rho(1));
        check.expect(h1.defined && h1.hf_rank == 2, "cpn(1) HF rank 2");
        auto [p3, c3] = builtin_cpn(3);
        const HFResult h3 = hf_rank(p3, c3, trivial_rho(3));
        check.expect(h3.defined && h3.hf_rank == 4, "cpn(3) HF rank 4");
        results.push_back(check.finish(1.0));
    }

    { // 3: even projective spaces are obstructed by a single term
        detail::Check check(3, "cpn(2), cpn(4) trivial: undefined with single-term obstruction");
        for (int k : {2, 4}) {
            auto [p, c] = builtin_cpn(k);
            const HFResult h = hf_rank(p, c, trivial_rho(k));
            check.expect(!h.defined, "cpn(" + std::to_string(k) + ") not defined");
            check.expect(h.obstruction.terms().size() == 1 &&
                             h.obstruction.terms().front().coeff.bits() == 1,
                         "obstruction is a single T^e term");
        }
        results.push_back(check.finish(1.0));
    }

    { // 4: the product polytopes of the real projective bound
        detail::Check check(4, "rp_product(1,1): rank 6, HF 4; rp_product(1,2): HF 8");
        auto [p11, c11] = builtin_rp_product(1, 1);
        const RhoAssignment rho11 = trivial_rho(4);
        check.expect(detail::all_zero(grad_components(p11, c11, rho11)), "trivial rho is critical");
        const FloerComplex k11 = build_complex(p11, c11, rho11);
        check.expect(k11.delta.rows() == 16 && k11.delta.cols() == 16, "16x16 differential");
        const HFResult h11 = hf_rank(p11, c11, rho11);
        check.expect(h11.defined && h11.delta_rank == 6, "delta rank 6");
        check.expect(h11.hf_rank == 4, "HF rank 4");
        auto [p12, c12] = builtin_rp_product(1, 2);
        const HFResult h12 = hf_rank(p12, c12, trivial_rho(6));
        check.expect(h12.defined && h12.hf_rank == 8, "rp_product(1,2) HF rank 8 (64x64 exact)");
        results.push_back(check.finish(60.0));
    }

    { // 5: intersection bounds via the product trick
        detail::Check check(5, "product bounds: cpn(2) at GF(4) critical point and cpn(1)");
        auto [p2, c2] = builtin_cpn(2);
        const FieldDescriptor f4 = make_field(2);
        const FieldElement w(f4, 2);
        const ProductBound b2 = product_bound(p2, c2, RhoAssignment{f4, {w, w}});
        check.expect(b2.bound == 2, "cpn(2) bound 2");
        check.expect(b2.product_hf.hf_rank == 4, "product HF rank 4");
        auto [p1, c1] = builtin_cpn(1);
        const ProductBound b1 = product_bound(p1, c1, trivial_rho(1));
        check.expect(b1.bound == 2, "cpn(1) bound 2");
        const HFResult h1 = hf_rank(p1, c1, trivial_rho(1));
        check.expect(h1.hf_rank == 2, "direct cpn(1) HF rank 2 consistent");
        results.push_back(check.finish(0.0));
    }

    { // 6: delta^2 = obstruction * id on the whole corpus
        detail::Check check(6, "delta^2 = obstruction * id on the randomized corpus");
        check.expect(corpus.size() >= 100, "corpus has >= 100 instances");
        int failures = 0;
        for (const auto& inst : corpus) {
            const auto norm = normalize_presentation(inst.p, inst.c);
            const FloerComplex k = build_complex(norm.polytope, norm.point, inst.rho);
            if (!check_obstruction(k)) ++failures;
        }
        check.expect(failures == 0, std::to_string(failures) + " proof-identity failures");
        check.note(std::to_string(corpus.size()) + " instances");
        results.push_back(check.finish(0.0));
    }

    { // 7: nonvanishing criterion on the defined part of the corpus
        detail::Check check(7, "obstruction 0: HF rank > 0 iff all Z_i = 0");
        int defined_count = 0;
        int failures = 0;
        for (const auto& inst : corpus) {
            const auto norm = normalize_presentation(inst.p, inst.c);
            const NovikovPoly w = potential_value(norm.polytope, norm.point, inst.rho);
            if (!w.is_zero()) continue;
            ++defined_count;
            const bool critical =
                detail::all_zero(grad_components(norm.polytope, norm.point, inst.rho));
            const HFResult h = hf_rank(norm.polytope, norm.point, inst.rho);
            if ((*h.hf_rank > 0) != critical) ++failures;
        }
        check.expect(defined_count > 0, "corpus contains defined instances");
        check.expect(failures == 0, std::to_string(failures) + " criterion failures");
        check.note(std::to_string(defined_count) + " defined instances");
        results.push_back(check.finish(0.0));
    }

    { // 8: the monotone builtins have a critical point below degree 8
        detail::Check check(8, "critical point exists for cpn(1..4) and rp_product(1,1)");
        std::vector<std::pair<std::string, std::pair<FanoPolytope, InteriorPoint>>> cases;
        for (int k = 1; k <= 4; ++k)
            cases.push_back({"cpn(" + std::to_string(k) + ")", builtin_cpn(k)});
        cases.push_back({"rp_product(1,1)", builtin_rp_product(1, 1)});
        for (auto& [label, pc] : cases) {
            const auto t0 = std::chrono::steady_clock::now();
            const CriticalSearch s = find_critical(pc.first, pc.second, 8);
            const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            check.expect(!s.reports.empty(), label + " has a critical point");
            check.expect(dt < 30.0, label + " searched in under 30s");
        }
        results.push_back(check.finish(0.0));
    }

    { // 9: rank engines agree; field invariants hold exhaustively
        detail::Check check(9, "exact vs probabilistic rank on corpus (5 seeds); field invariants");
        int disagreements = 0;
        for (const auto& inst : corpus) {
            const auto norm = normalize_presentation(inst.p, inst.c);
            const FloerComplex k = build_complex(norm.polytope, norm.point, inst.rho);
            const int exact = rank(k.delta);
            for (std::uint64_t seed = 1; seed <= 5; ++seed)
                if (rank(k.delta, RankMethod::probabilistic, seed) != exact) ++disagreements;
        }
        check.expect(disagreements == 0, std::to_string(disagreements) + " rank disagreements");

        int field_failures = 0;
        for (int m = 1; m <= 8; ++m) {
            const FieldDescriptor fd = make_field(m);
            const std::uint32_t count = 1u << m;
            for (std::uint32_t ab = 0; ab < count; ++ab) {
                const FieldElement a(fd, ab);
                if (!(gf_sqrt(a) * gf_sqrt(a) == a)) ++field_failures;
                if (!(gf_sqrt(a * a) == a)) ++field_failures;
                if (ab != 0 && !(inv(inv(a)) == a)) ++field_failures;
                for (std::uint32_t bb = 0; bb < count; ++bb) {
                    const FieldElement b(fd, bb);
                    const FieldElement s = a + b;
                    if (!(s * s == a * a + b * b)) ++field_failures;
                }
            }
        }
        check.expect(field_failures == 0,
                     std::to_string(field_failures) + " field invariant failures");
        results.push_back(check.finish(0.0));
    }

    return results;
}

} // namespace floertool
