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

// The potential function W_c(rho) = sum_j rho^(v_j) T^(e_j), its logarithmic
// gradient components Z_i = sum_j v_j^i rho^(v_j) T^(e_j) (integer weights
// reduced mod 2), and exhaustive critical-point search over the field tower
// GF(2^m), m = 1..max_degree. W_c's value is the obstruction of the Floer
// complex; rho is a critical point exactly when every Z_i vanishes.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floertool/errors.hpp"
#include "floertool/gf2.hpp"
#include "floertool/novikov.hpp"
#include "floertool/polytope.hpp"
#include "floertool/rational.hpp"

namespace floertool {

/// The local system: one nonzero value of GF(2^m) per torus coordinate.
struct RhoAssignment {
    FieldDescriptor field;
    std::vector<FieldElement> values;

    friend bool operator==(const RhoAssignment&, const RhoAssignment&) = default;
};

inline void require_rho(const RhoAssignment& rho, int n) {
    if (static_cast<int>(rho.values.size()) != n)
        throw domain_error("rho has " + std::to_string(rho.values.size()) + " values, expected " +
                           std::to_string(n));
    for (const auto& v : rho.values) {
        if (v.degree() != rho.field.degree) throw domain_error("rho value from wrong field");
        if (v.is_zero()) throw domain_error("rho values must be nonzero");
    }
}

/// rho = (1, ..., 1) over GF(2).
inline RhoAssignment trivial_rho(int n) {
    const FieldDescriptor f2 = make_field(1);
    RhoAssignment rho{f2, {}};
    rho.values.assign(static_cast<std::size_t>(n), FieldElement::one(f2));
    return rho;
}

/// rho^v = prod_i rho_i^(v_i); negative exponents are fine, the values are units.
inline FieldElement monomial_power(const RhoAssignment& rho, const std::vector<long long>& v) {
    require_rho(rho, static_cast<int>(v.size()));
    FieldElement acc = FieldElement::one(rho.field);
    for (std::size_t i = 0; i < v.size(); ++i) acc = acc * gf_pow(rho.values[i], v[i]);
    return acc;
}

inline NovikovPoly potential_value(const FanoPolytope& p, const InteriorPoint& c,
                                   const RhoAssignment& rho) {
    require_rho(rho, p.n);
    const EnergyVector e = energies(p, c);
    std::vector<NovikovTerm> terms;
    terms.reserve(p.facets.size());
    for (std::size_t j = 0; j < p.facets.size(); ++j)
        terms.push_back({e.e[j], monomial_power(rho, p.facets[j].normal)});
    return NovikovPoly(rho.field, std::move(terms));
}

/// Z_i with the integer weight v_j^i reduced mod 2 (characteristic two).
inline std::vector<NovikovPoly> grad_components(const FanoPolytope& p, const InteriorPoint& c,
                                                const RhoAssignment& rho) {
    require_rho(rho, p.n);
    const EnergyVector e = energies(p, c);
    std::vector<NovikovPoly> z;
    z.reserve(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) {
        std::vector<NovikovTerm> terms;
        for (std::size_t j = 0; j < p.facets.size(); ++j) {
            if ((p.facets[j].normal[static_cast<std::size_t>(i)] & 1LL) == 0) continue;
            terms.push_back({e.e[j], monomial_power(rho, p.facets[j].normal)});
        }
        z.emplace_back(rho.field, std::move(terms));
    }
    return z;
}

/// One evaluated rho: the potential value, the gradient components, and the
/// two classification flags of the criticality criterion.
struct CriticalReport {
    RhoAssignment rho;
    NovikovPoly w_value;
    std::vector<NovikovPoly> z_values;
    bool defined = false;      // w_value == 0
    bool nonvanishing = false; // all z_values == 0
};

inline CriticalReport evaluate_rho(const FanoPolytope& p, const InteriorPoint& c,
                                   const RhoAssignment& rho) {
    CriticalReport r{rho, potential_value(p, c, rho), grad_components(p, c, rho), false, false};
    r.defined = r.w_value.is_zero();
    r.nonvanishing = true;
    for (const auto& z : r.z_values) r.nonvanishing = r.nonvanishing && z.is_zero();
    return r;
}

inline constexpr std::uint64_t kDefaultSearchBudget = std::uint64_t{1} << 27;

struct CriticalSearch {
    std::vector<CriticalReport> reports;
    int layers_completed = 0;
    std::optional<int> budget_exceeded_at;
    std::uint64_t candidates_tested = 0;
};

/// Enumerates rho over (GF(2^m) \ {0})^n for m = 1, 2, ..., max_degree and
/// returns every critical point (all Z_i = 0). A tuple whose joint minimal
/// subfield has degree below the current layer was already reported there and
/// is skipped. A layer whose cost (2^m - 1)^n exceeds the budget stops the
/// search; the partial result records the layer reached.
inline CriticalSearch find_critical(const FanoPolytope& p, const InteriorPoint& c, int max_degree,
                                    std::uint64_t budget = kDefaultSearchBudget) {
    require_valid(p, c);
    if (max_degree < 1 || max_degree > kMaxFieldDegree)
        throw domain_error("max_degree outside [1, 16]");
    const int n = p.n;
    const int mf = static_cast<int>(p.facets.size());
    const EnergyVector energy = energies(p, c);

    // Distinct-energy classes: each Z_i vanishes iff it vanishes per class.
    std::map<Rational, int> class_of;
    for (const auto& e : energy.e) class_of.emplace(e, static_cast<int>(class_of.size()));
    const int classes = static_cast<int>(class_of.size());
    std::vector<int> facet_class(static_cast<std::size_t>(mf));
    for (int j = 0; j < mf; ++j) facet_class[static_cast<std::size_t>(j)] = class_of[energy.e[static_cast<std::size_t>(j)]];

    // odd_facets[i * classes + g] = facets j in class g with v_j^i odd
    std::vector<std::vector<int>> odd_facets(static_cast<std::size_t>(n) * classes);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < mf; ++j)
            if (p.facets[static_cast<std::size_t>(j)].normal[static_cast<std::size_t>(i)] & 1LL)
                odd_facets[static_cast<std::size_t>(i) * classes +
                           facet_class[static_cast<std::size_t>(j)]]
                    .push_back(j);

    CriticalSearch out;
    for (int m = 1; m <= max_degree; ++m) {
        const std::uint64_t q = (std::uint64_t{1} << m) - 1;
        BigInt cost = 1;
        for (int i = 0; i < n; ++i) cost *= q;
        if (cost > budget) {
            out.budget_exceeded_at = m;
            break;
        }
        const auto& tables = detail::field_tables(m);
        const FieldDescriptor fd = make_field(m);

        // Multiplicative-exponent view: rho_i = g^(a_i), so rho^(v_j) =
        // g^(<a, v_j> mod q). The odometer keeps s_j = <a, v_j> mod q current.
        std::vector<std::uint32_t> step(static_cast<std::size_t>(mf) * static_cast<std::size_t>(n));
        for (int j = 0; j < mf; ++j)
            for (int i = 0; i < n; ++i) {
                long long vi = p.facets[static_cast<std::size_t>(j)].normal[static_cast<std::size_t>(i)] %
                               static_cast<long long>(q);
                if (vi < 0) vi += static_cast<long long>(q);
                step[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] =
                    static_cast<std::uint32_t>(vi);
            }

        std::vector<std::uint32_t> a(static_cast<std::size_t>(n), 0);
        std::vector<std::uint32_t> s(static_cast<std::size_t>(mf), 0);
        std::vector<CriticalReport> layer_hits;

        const auto recompute = [&] {
            for (int j = 0; j < mf; ++j) {
                std::uint64_t acc = 0;
                for (int i = 0; i < n; ++i)
                    acc += static_cast<std::uint64_t>(a[static_cast<std::size_t>(i)]) *
                           step[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)];
                s[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(acc % q);
            }
        };
        recompute();

        bool done = false;
        while (!done) {
            ++out.candidates_tested;
            bool critical = true;
            for (int i = 0; critical && i < n; ++i)
                for (int g = 0; critical && g < classes; ++g) {
                    std::uint32_t acc = 0;
                    for (int j : odd_facets[static_cast<std::size_t>(i) * classes + g])
                        acc ^= tables.exp[s[static_cast<std::size_t>(j)]];
                    critical = acc == 0;
                }
            if (critical) {
                RhoAssignment rho{fd, {}};
                rho.values.reserve(static_cast<std::size_t>(n));
                int joint = 1;
                for (int i = 0; i < n; ++i) {
                    const FieldElement value(fd, tables.exp[a[static_cast<std::size_t>(i)]]);
                    joint = static_cast<int>(std::lcm(joint, subfield_degree(value)));
                    rho.values.push_back(value);
                }
                if (joint == m) {
                    CriticalReport rep = evaluate_rho(p, c, rho);
                    if (!rep.nonvanishing)
                        throw internal_error("fast critical test disagrees with exact gradient");
                    layer_hits.push_back(std::move(rep));
                }
            }
            // odometer increment with incremental s updates on the last digit
            int pos = n - 1;
            if (q > 1 && a[static_cast<std::size_t>(pos)] + 1 < q) {
                ++a[static_cast<std::size_t>(pos)];
                for (int j = 0; j < mf; ++j) {
                    s[static_cast<std::size_t>(j)] +=
                        step[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(pos)];
                    if (s[static_cast<std::size_t>(j)] >= q)
                        s[static_cast<std::size_t>(j)] -= static_cast<std::uint32_t>(q);
                }
                continue;
            }
            while (pos >= 0 && a[static_cast<std::size_t>(pos)] + 1 >= q) {
                a[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) {
                done = true;
            } else {
                ++a[static_cast<std::size_t>(pos)];
                recompute();
            }
        }

        std::sort(layer_hits.begin(), layer_hits.end(),
                  [](const CriticalReport& x, const CriticalReport& y) {
                      for (std::size_t i = 0; i < x.rho.values.size(); ++i) {
                          if (x.rho.values[i].bits() != y.rho.values[i].bits())
                              return x.rho.values[i].bits() < y.rho.values[i].bits();
                      }
                      return false;
                  });
        for (auto& hit : layer_hits) out.reports.push_back(std::move(hit));
        out.layers_completed = m;
    }
    return out;
}

} // namespace floertool
