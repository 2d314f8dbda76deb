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

// Moment polytopes P = { u : <u, v_j> >= lambda_j } with integral primitive
// facet normals and rational constants, interior points, per-facet energies
// <c, v_j> - lambda_j, the standard-basis normalization convention, product
// polytopes, and the builtin example data.
//
// Fano-ness and Delzant smoothness of the associated toric manifold are the
// caller's assertion; validation here covers exactly the stated shape
// invariants plus the existence of a unimodular normal subset.

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "floertool/errors.hpp"
#include "floertool/rational.hpp"

namespace floertool {

struct Facet {
    std::vector<long long> normal;
    Rational lambda;

    friend bool operator==(const Facet&, const Facet&) = default;
};

struct FanoPolytope {
    int n = 0;
    std::vector<Facet> facets;
    std::string name;

    friend bool operator==(const FanoPolytope&, const FanoPolytope&) = default;
};

struct InteriorPoint {
    std::vector<Rational> c;

    friend bool operator==(const InteriorPoint&, const InteriorPoint&) = default;
};

struct EnergyVector {
    std::vector<Rational> e;

    friend bool operator==(const EnergyVector&, const EnergyVector&) = default;
};

struct Diagnostics {
    struct Issue {
        std::string message;
        std::optional<int> facet; // 0-based index when the issue names one
    };
    bool ok = true;
    std::vector<Issue> issues;
};

namespace detail {

inline Rational dot(const std::vector<Rational>& c, const std::vector<long long>& v) {
    Rational acc(0);
    for (std::size_t i = 0; i < v.size(); ++i) acc += c[i] * Rational(v[i]);
    return acc;
}

inline BigInt int_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Inverse of an integer matrix with det +-1; the result is again integral.
inline std::vector<std::vector<long long>> unimodular_inverse(
    const std::vector<std::vector<long long>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
        a[i][n + i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw internal_error("singular matrix in unimodular inverse");
        std::swap(a[piv], a[col]);
        const Rational inv_piv = Rational(1) / a[col][col];
        for (auto& x : a[col]) x *= inv_piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    std::vector<std::vector<long long>> out(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& x = a[i][n + j];
            if (denominator(x) != 1) throw internal_error("non-integral unimodular inverse");
            out[i][j] = to_int64_checked(numerator(x));
        }
    return out;
}

/// Lexicographically-first n-subset of facet indices whose normals form a
/// unimodular basis of Z^n, or nullopt when none exists.
inline std::optional<std::vector<int>> first_unimodular_subset(const FanoPolytope& p) {
    const int n = p.n;
    const int m = static_cast<int>(p.facets.size());
    if (m < n) return std::nullopt;
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<std::vector<BigInt>> mat(static_cast<std::size_t>(n),
                                             std::vector<BigInt>(static_cast<std::size_t>(n)));
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < n; ++row)
                mat[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                    p.facets[static_cast<std::size_t>(idx[static_cast<std::size_t>(col)])]
                        .normal[static_cast<std::size_t>(row)];
        const BigInt d = int_determinant(std::move(mat));
        if (d == 1 || d == -1) return idx;
        // next lexicographic combination
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - n + pos) --pos;
        if (pos < 0) return std::nullopt;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < n; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

} // namespace detail

inline Diagnostics validate(const FanoPolytope& p, const InteriorPoint& c) {
    Diagnostics d;
    auto fail = [&](std::string msg, std::optional<int> facet = std::nullopt) {
        d.ok = false;
        d.issues.push_back({std::move(msg), facet});
    };

    if (p.n < 1) {
        fail("dimension must be positive");
        return d;
    }
    const int m = static_cast<int>(p.facets.size());
    if (m < p.n + 1) fail("need at least n+1 facets, got " + std::to_string(m));
    for (int j = 0; j < m; ++j) {
        const auto& f = p.facets[static_cast<std::size_t>(j)];
        if (static_cast<int>(f.normal.size()) != p.n) {
            fail("facet " + std::to_string(j) + ": normal has wrong length", j);
            continue;
        }
        long long g = 0;
        for (long long x : f.normal) g = std::gcd(g, x);
        if (g != 1) fail("facet " + std::to_string(j) + ": normal is not primitive", j);
    }
    if (static_cast<int>(c.c.size()) != p.n) fail("interior point has wrong length");

    if (!d.ok) return d;

    for (int j = 0; j < m; ++j) {
        const auto& f = p.facets[static_cast<std::size_t>(j)];
        if (!(detail::dot(c.c, f.normal) > f.lambda)) {
            fail("facet " + std::to_string(j) + ": interior point fails strict inequality <c,v> > lambda",
                 j);
            return d;
        }
    }
    if (!detail::first_unimodular_subset(p))
        fail("no n-subset of normals forms a unimodular basis (non-Delzant presentation)");
    return d;
}

inline void require_valid(const FanoPolytope& p, const InteriorPoint& c) {
    const Diagnostics d = validate(p, c);
    if (!d.ok) {
        std::string msg = "invalid polytope data";
        if (!d.issues.empty()) msg += ": " + d.issues.front().message;
        throw domain_error(msg);
    }
}

inline EnergyVector energies(const FanoPolytope& p, const InteriorPoint& c) {
    require_valid(p, c);
    EnergyVector out;
    out.e.reserve(p.facets.size());
    for (const auto& f : p.facets) out.e.push_back(detail::dot(c.c, f.normal) - f.lambda);
    return out;
}

/// Result of the normalization pass. The first n facets of `polytope` satisfy
/// v_j = e_j, lambda_j = 0. `facet_order[k]` is the input index now at
/// position k, `basis_change` is the unimodular map applied to normals
/// (v' = B v) and `translation` the point shift; per-facet energies are
/// untouched by the transform.
struct NormalizedPresentation {
    FanoPolytope polytope;
    InteriorPoint point;
    std::vector<int> facet_order;
    std::vector<std::vector<long long>> basis_change;
    std::vector<Rational> translation;
    bool identity = false;
};

inline NormalizedPresentation normalize_presentation(const FanoPolytope& p, const InteriorPoint& c) {
    require_valid(p, c);
    const int n = p.n;
    const int m = static_cast<int>(p.facets.size());
    const auto subset = detail::first_unimodular_subset(p);
    if (!subset) throw domain_error("no unimodular n-subset of normals (non-Delzant input)");

    NormalizedPresentation out;
    out.facet_order.reserve(static_cast<std::size_t>(m));
    for (int j : *subset) out.facet_order.push_back(j);
    for (int j = 0; j < m; ++j)
        if (std::find(subset->begin(), subset->end(), j) == subset->end())
            out.facet_order.push_back(j);

    // V has the chosen normals as columns; new normals are V^-1 v_j and the
    // translation solves <b, v_(j_i)> = lambda_(j_i).
    std::vector<std::vector<long long>> v(static_cast<std::size_t>(n),
                                          std::vector<long long>(static_cast<std::size_t>(n)));
    for (int col = 0; col < n; ++col)
        for (int row = 0; row < n; ++row)
            v[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                p.facets[static_cast<std::size_t>((*subset)[static_cast<std::size_t>(col)])]
                    .normal[static_cast<std::size_t>(row)];
    out.basis_change = detail::unimodular_inverse(v);

    std::vector<Rational> b(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i) {
        // b = (V^-1)^T lambda_S
        Rational acc(0);
        for (int k = 0; k < n; ++k)
            acc += Rational(out.basis_change[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]) *
                   p.facets[static_cast<std::size_t>((*subset)[static_cast<std::size_t>(k)])].lambda;
        b[static_cast<std::size_t>(i)] = acc;
    }
    out.translation = b;

    out.polytope.n = n;
    out.polytope.name = p.name;
    out.polytope.facets.reserve(static_cast<std::size_t>(m));
    for (int pos = 0; pos < m; ++pos) {
        const auto& f = p.facets[static_cast<std::size_t>(out.facet_order[static_cast<std::size_t>(pos)])];
        Facet nf;
        nf.normal.assign(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            long long acc = 0;
            for (int k = 0; k < n; ++k)
                acc += out.basis_change[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                       f.normal[static_cast<std::size_t>(k)];
            nf.normal[static_cast<std::size_t>(i)] = acc;
        }
        Rational shift(0);
        for (int k = 0; k < n; ++k)
            shift += b[static_cast<std::size_t>(k)] * Rational(f.normal[static_cast<std::size_t>(k)]);
        nf.lambda = f.lambda - shift;
        out.polytope.facets.push_back(std::move(nf));
    }

    // c' = V^T (c - b)
    out.point.c.assign(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i) {
        Rational acc(0);
        for (int k = 0; k < n; ++k)
            acc += Rational(v[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]) *
                   (c.c[static_cast<std::size_t>(k)] - b[static_cast<std::size_t>(k)]);
        out.point.c[static_cast<std::size_t>(i)] = acc;
    }

    out.identity = out.polytope == p && out.point == c;
    return out;
}

inline std::pair<FanoPolytope, InteriorPoint> normalize(const FanoPolytope& p,
                                                        const InteriorPoint& c) {
    auto norm = normalize_presentation(p, c);
    return {std::move(norm.polytope), std::move(norm.point)};
}

/// True when the first n facets already satisfy the v_j = e_j, lambda_j = 0
/// convention.
inline bool in_convention(const FanoPolytope& p) {
    if (static_cast<int>(p.facets.size()) < p.n) return false;
    for (int j = 0; j < p.n; ++j) {
        const auto& f = p.facets[static_cast<std::size_t>(j)];
        if (static_cast<int>(f.normal.size()) != p.n || f.lambda != 0) return false;
        for (int i = 0; i < p.n; ++i)
            if (f.normal[static_cast<std::size_t>(i)] != (i == j ? 1 : 0)) return false;
    }
    return true;
}

inline std::pair<FanoPolytope, InteriorPoint> product(const FanoPolytope& p1, const InteriorPoint& c1,
                                                      const FanoPolytope& p2,
                                                      const InteriorPoint& c2) {
    require_valid(p1, c1);
    require_valid(p2, c2);
    FanoPolytope q;
    q.n = p1.n + p2.n;
    q.name = (p1.name.empty() ? "P1" : p1.name) + " x " + (p2.name.empty() ? "P2" : p2.name);
    for (const auto& f : p1.facets) {
        Facet nf;
        nf.normal = f.normal;
        nf.normal.resize(static_cast<std::size_t>(q.n), 0);
        nf.lambda = f.lambda;
        q.facets.push_back(std::move(nf));
    }
    for (const auto& f : p2.facets) {
        Facet nf;
        nf.normal.assign(static_cast<std::size_t>(p1.n), 0);
        nf.normal.insert(nf.normal.end(), f.normal.begin(), f.normal.end());
        nf.lambda = f.lambda;
        q.facets.push_back(std::move(nf));
    }
    InteriorPoint c;
    c.c = c1.c;
    c.c.insert(c.c.end(), c2.c.begin(), c2.c.end());
    return {std::move(q), std::move(c)};
}

// ---------------------------------------------------------------------------
// Builtin example data.

inline constexpr int kMaxBuiltinDimension = 10;

/// cpn(k): the monotone projective-space polytope, normals e_1..e_k and
/// -(e_1+...+e_k) with lambda = (0,...,0,-(k+1)), interior point (1,...,1).
inline std::pair<FanoPolytope, InteriorPoint> builtin_cpn(int k) {
    if (k < 1 || k > kMaxBuiltinDimension)
        throw domain_error("cpn(k) supports 1 <= k <= " + std::to_string(kMaxBuiltinDimension));
    FanoPolytope p;
    p.n = k;
    p.name = "cpn(" + std::to_string(k) + ")";
    for (int j = 0; j < k; ++j) {
        Facet f;
        f.normal.assign(static_cast<std::size_t>(k), 0);
        f.normal[static_cast<std::size_t>(j)] = 1;
        f.lambda = Rational(0);
        p.facets.push_back(std::move(f));
    }
    Facet last;
    last.normal.assign(static_cast<std::size_t>(k), -1);
    last.lambda = Rational(-(k + 1));
    p.facets.push_back(std::move(last));
    InteriorPoint c;
    c.c.assign(static_cast<std::size_t>(k), Rational(1));
    return {std::move(p), std::move(c)};
}

/// blowup_cp3: the one-point blow-up of CP^3 with its monotone constants,
/// normals e_1, e_2, e_3, (-1,-1,-1), (1,1,1), lambda = (0,0,0,-4,2), c = (1,1,1).
inline std::pair<FanoPolytope, InteriorPoint> builtin_blowup_cp3() {
    FanoPolytope p;
    p.n = 3;
    p.name = "blowup_cp3";
    const std::vector<std::vector<long long>> normals = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 1}};
    const std::vector<long long> lambdas = {0, 0, 0, -4, 2};
    for (std::size_t j = 0; j < normals.size(); ++j)
        p.facets.push_back({normals[j], Rational(lambdas[j])});
    InteriorPoint c;
    c.c.assign(3, Rational(1));
    return {std::move(p), std::move(c)};
}

/// rp_product(k, j): the monotone CP^2k x CP^2j polytope in dimension 2k+2j,
/// with lambda = -(2k+1) and -(2j+1) on the two slanted facets, c = (1,...,1).
inline std::pair<FanoPolytope, InteriorPoint> builtin_rp_product(int k, int j) {
    if (k < 1 || j < 1 || 2 * k + 2 * j > kMaxBuiltinDimension)
        throw domain_error("rp_product(k, j) requires k, j >= 1 and 2k+2j <= " +
                           std::to_string(kMaxBuiltinDimension));
    const int n = 2 * k + 2 * j;
    FanoPolytope p;
    p.n = n;
    p.name = "rp_product(" + std::to_string(k) + "," + std::to_string(j) + ")";
    for (int t = 0; t < n; ++t) {
        Facet f;
        f.normal.assign(static_cast<std::size_t>(n), 0);
        f.normal[static_cast<std::size_t>(t)] = 1;
        f.lambda = Rational(0);
        p.facets.push_back(std::move(f));
    }
    Facet a;
    a.normal.assign(static_cast<std::size_t>(n), 0);
    for (int t = 0; t < 2 * k; ++t) a.normal[static_cast<std::size_t>(t)] = -1;
    a.lambda = Rational(-(2 * k + 1));
    p.facets.push_back(std::move(a));
    Facet b;
    b.normal.assign(static_cast<std::size_t>(n), 0);
    for (int t = 2 * k; t < n; ++t) b.normal[static_cast<std::size_t>(t)] = -1;
    b.lambda = Rational(-(2 * j + 1));
    p.facets.push_back(std::move(b));
    InteriorPoint c;
    c.c.assign(static_cast<std::size_t>(n), Rational(1));
    return {std::move(p), std::move(c)};
}

/// Builtin lookup by name: "cpn(k)", "blowup_cp3", or "rp_product(k,j)".
inline std::pair<FanoPolytope, InteriorPoint> builtin(const std::string& name) {
    const auto parse_args = [&](std::size_t open) {
        if (name.back() != ')') throw domain_error("unknown builtin polytope '" + name + "'");
        std::vector<int> args;
        std::string cur;
        for (std::size_t i = open + 1; i + 1 < name.size(); ++i) {
            const char ch = name[i];
            if (ch == ',') {
                args.push_back(std::stoi(cur));
                cur.clear();
            } else if (ch >= '0' && ch <= '9') {
                cur += ch;
            } else {
                throw domain_error("unknown builtin polytope '" + name + "'");
            }
        }
        if (cur.empty()) throw domain_error("unknown builtin polytope '" + name + "'");
        args.push_back(std::stoi(cur));
        return args;
    };

    if (name == "blowup_cp3") return builtin_blowup_cp3();
    if (name.rfind("cpn(", 0) == 0) {
        const auto args = parse_args(3);
        if (args.size() != 1) throw domain_error("cpn takes one parameter");
        return builtin_cpn(args[0]);
    }
    if (name.rfind("rp_product(", 0) == 0) {
        const auto args = parse_args(10);
        if (args.size() != 2) throw domain_error("rp_product takes two parameters");
        return builtin_rp_product(args[0], args[1]);
    }
    throw domain_error("unknown builtin polytope '" + name + "'");
}

} // namespace floertool
