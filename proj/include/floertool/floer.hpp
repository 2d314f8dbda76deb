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

// The combinatorial Floer complex: basis eps in {0,1}^n, differential
//
//   delta = sum_j sqrt(rho^(v_j)) T^(e_j / 2) f_j,
//   f_j(eps) = eps + v_j (mod 2),
//
// with delta^2 = W_c(rho) * id identically. When the obstruction W_c(rho)
// vanishes the cohomology rank over the Novikov field is 2^n - 2 rank(delta).
// The product construction doubles (P, c, rho); its obstruction cancels in
// characteristic two, which yields the ceil(sqrt(rank)) intersection bound.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floertool/errors.hpp"
#include "floertool/gf2.hpp"
#include "floertool/novikov.hpp"
#include "floertool/polytope.hpp"
#include "floertool/potential.hpp"
#include "floertool/rational.hpp"

namespace floertool {

/// Largest complex dimension the dense 2^n x 2^n representation accepts.
inline constexpr int kMaxComplexDimension = 10;

/// Basis order is lexicographic on eps with eps_1 most significant: the tuple
/// (eps_1, ..., eps_n) sits at index sum_i eps_i 2^(n-i).
inline std::uint32_t facet_mask(const std::vector<long long>& v, int n) {
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i)
        if (v[static_cast<std::size_t>(i)] & 1LL) mask |= 1u << (n - 1 - i);
    return mask;
}

struct FloerComplex {
    int n = 0;
    NovikovMatrix delta;
    NovikovPoly obstruction;
};

/// Builds the complex for a presentation already in the normalization
/// convention (first n facets standard). rho is read in those coordinates.
inline FloerComplex build_complex(const FanoPolytope& p, const InteriorPoint& c,
                                  const RhoAssignment& rho) {
    require_valid(p, c);
    if (!in_convention(p))
        throw domain_error("polytope presentation is not normalized; run normalize first");
    require_rho(rho, p.n);
    if (p.n > kMaxComplexDimension)
        throw domain_error("complex dimension " + std::to_string(p.n) + " exceeds the supported " +
                           std::to_string(kMaxComplexDimension));

    const int n = p.n;
    const int size = 1 << n;
    const EnergyVector e = energies(p, c);

    FloerComplex k{n, NovikovMatrix(size, size, rho.field), potential_value(p, c, rho)};
    for (std::size_t j = 0; j < p.facets.size(); ++j) {
        const FieldElement coeff = gf_sqrt(monomial_power(rho, p.facets[j].normal));
        const NovikovPoly term = NovikovPoly::term(rho.field, e.e[j] / 2, coeff);
        const std::uint32_t mask = facet_mask(p.facets[j].normal, n);
        for (int b = 0; b < size; ++b)
            k.delta.add_at(static_cast<int>(static_cast<std::uint32_t>(b) ^ mask), b, term);
    }
    return k;
}

/// True iff delta * delta equals obstruction * identity entrywise. This is an
/// identity of the construction; false signals an implementation bug.
inline bool check_obstruction(const FloerComplex& k) {
    return multiply(k.delta, k.delta) ==
           NovikovMatrix::scaled_identity(1 << k.n, k.obstruction);
}

struct HFResult {
    bool defined = false;
    NovikovPoly obstruction;
    std::optional<int> delta_rank; // present iff defined
    std::optional<int> hf_rank;    // present iff defined; 2^n - 2 delta_rank

    friend bool operator==(const HFResult&, const HFResult&) = default;
};

/// Floer cohomology rank. Accepts any valid presentation; the input is
/// normalized internally and rho is interpreted in the normalized frame.
inline HFResult hf_rank(const FanoPolytope& p, const InteriorPoint& c, const RhoAssignment& rho,
                        RankMethod method = RankMethod::exact, std::uint64_t seed = 0) {
    const auto norm = normalize_presentation(p, c);
    const FloerComplex k = build_complex(norm.polytope, norm.point, rho);
    HFResult out;
    out.obstruction = k.obstruction;
    out.defined = k.obstruction.is_zero();
    if (out.defined) {
        const int r = rank(k.delta, method, seed);
        const int total = 1 << k.n;
        if (2 * r > total)
            throw internal_error("delta rank exceeds half the complex dimension with zero obstruction");
        out.delta_rank = r;
        out.hf_rank = total - 2 * r;
    }
    return out;
}

struct ProductBound {
    HFResult product_hf; // for (P x P, c x c) with the doubled assignment
    int bound = 0;       // ceil(sqrt(product hf rank))
};

inline int ceil_sqrt(int value) {
    int r = 0;
    while (r * r < value) ++r;
    return r;
}

/// The product trick: requires rho critical (all Z_i = 0). The doubled
/// obstruction W + W cancels in characteristic two, so the product cohomology
/// is always defined; its rank bounds the intersection count from below by
/// ceil of its square root.
inline ProductBound product_bound(const FanoPolytope& p, const InteriorPoint& c,
                                  const RhoAssignment& rho, RankMethod method = RankMethod::exact,
                                  std::uint64_t seed = 0) {
    const auto norm = normalize_presentation(p, c);
    for (const auto& z : grad_components(norm.polytope, norm.point, rho))
        if (!z.is_zero())
            throw domain_error("rho is not a critical point; the product bound requires Z = 0");

    auto [q, cq] = product(norm.polytope, norm.point, norm.polytope, norm.point);
    RhoAssignment doubled{rho.field, rho.values};
    doubled.values.insert(doubled.values.end(), rho.values.begin(), rho.values.end());

    ProductBound out;
    out.product_hf = hf_rank(q, cq, doubled, method, seed);
    if (!out.product_hf.defined)
        throw internal_error("doubled obstruction failed to cancel in characteristic two");
    out.bound = ceil_sqrt(*out.product_hf.hf_rank);
    return out;
}

} // namespace floertool
