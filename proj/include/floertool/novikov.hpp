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

// Finite sums sum_i a_i T^(lambda_i) with a_i in GF(2^m) and lambda_i
// rational, plus exact matrix rank over the fraction field. Rank is computed
// by clearing all exponents to a common integer lattice (S = T^(1/D)) and
// running fraction-free Bareiss elimination in GF(2^m)[S]; a seeded random
// evaluation of S doubles as an independent probabilistic cross-check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "floertool/errors.hpp"
#include "floertool/gf2.hpp"
#include "floertool/rational.hpp"

namespace floertool {

struct NovikovTerm {
    Rational exponent;
    FieldElement coeff;

    friend bool operator==(const NovikovTerm&, const NovikovTerm&) = default;
};

/// Element of the Novikov polynomial ring over GF(2^m). Terms are kept sorted
/// by strictly increasing exponent with no zero coefficients; the empty term
/// list is the zero element.
class NovikovPoly {
public:
    NovikovPoly() = default; // zero over GF(2)

    explicit NovikovPoly(const FieldDescriptor& field) : degree_(field.degree) {}

    NovikovPoly(const FieldDescriptor& field, std::vector<NovikovTerm> terms)
        : degree_(field.degree), terms_(std::move(terms)) {
        normalize();
    }

    static NovikovPoly term(const FieldDescriptor& field, const Rational& exponent,
                            const FieldElement& coeff) {
        if (coeff.degree() != field.degree) throw domain_error("term coefficient from wrong field");
        NovikovPoly p(field);
        if (!coeff.is_zero()) p.terms_.push_back({exponent, coeff});
        return p;
    }

    static NovikovPoly one(const FieldDescriptor& field) {
        return term(field, Rational(0), FieldElement::one(field));
    }

    /// The monomial 1 * T^exponent.
    static NovikovPoly t_power(const FieldDescriptor& field, const Rational& exponent) {
        return term(field, exponent, FieldElement::one(field));
    }

    const std::vector<NovikovTerm>& terms() const { return terms_; }
    int field_degree() const { return degree_; }
    FieldDescriptor field() const { return make_field(degree_); }
    bool is_zero() const { return terms_.empty(); }

    /// Minimum exponent; nullopt encodes +infinity (the zero element).
    std::optional<Rational> valuation() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.front().exponent;
    }

    friend bool operator==(const NovikovPoly&, const NovikovPoly&) = default;

private:
    void normalize() {
        for (const auto& t : terms_)
            if (t.coeff.degree() != degree_)
                throw domain_error("Novikov term coefficient from wrong field");
        std::sort(terms_.begin(), terms_.end(),
                  [](const NovikovTerm& a, const NovikovTerm& b) { return a.exponent < b.exponent; });
        std::vector<NovikovTerm> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().exponent == t.exponent)
                merged.back().coeff = merged.back().coeff + t.coeff;
            else
                merged.push_back(std::move(t));
        }
        std::erase_if(merged, [](const NovikovTerm& t) { return t.coeff.is_zero(); });
        terms_ = std::move(merged);
    }

    int degree_ = 1;
    std::vector<NovikovTerm> terms_;
};

namespace detail {
inline void require_same_field(const NovikovPoly& a, const NovikovPoly& b) {
    if (a.field_degree() != b.field_degree())
        throw domain_error("mixed-field Novikov operands");
}
} // namespace detail

inline NovikovPoly nv_add(const NovikovPoly& a, const NovikovPoly& b) {
    detail::require_same_field(a, b);
    std::vector<NovikovTerm> out;
    out.reserve(a.terms().size() + b.terms().size());
    out.insert(out.end(), a.terms().begin(), a.terms().end());
    out.insert(out.end(), b.terms().begin(), b.terms().end());
    return NovikovPoly(a.field(), std::move(out));
}

inline NovikovPoly nv_mul(const NovikovPoly& a, const NovikovPoly& b) {
    detail::require_same_field(a, b);
    std::vector<NovikovTerm> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            out.push_back({ta.exponent + tb.exponent, ta.coeff * tb.coeff});
    return NovikovPoly(a.field(), std::move(out));
}

inline NovikovPoly operator+(const NovikovPoly& a, const NovikovPoly& b) { return nv_add(a, b); }
inline NovikovPoly operator*(const NovikovPoly& a, const NovikovPoly& b) { return nv_mul(a, b); }

inline NovikovPoly nv_scale(const NovikovPoly& a, const FieldElement& c) {
    if (c.degree() != a.field_degree()) throw domain_error("mixed-field Novikov scale");
    std::vector<NovikovTerm> out;
    out.reserve(a.terms().size());
    for (const auto& t : a.terms()) out.push_back({t.exponent, t.coeff * c});
    return NovikovPoly(a.field(), std::move(out));
}

inline std::optional<Rational> valuation(const NovikovPoly& a) { return a.valuation(); }

// ---------------------------------------------------------------------------
// Integer-lattice polynomials: the image of Novikov polynomials under
// S = T^(1/D). Coefficients are raw field words to keep elimination tight.

namespace detail {

inline std::uint32_t bits_mul(const FieldTables& t, std::uint32_t a, std::uint32_t b) {
    if (a == 0 || b == 0) return 0;
    return t.exp[t.log[a] + t.log[b]];
}

inline std::uint32_t bits_div(const FieldTables& t, std::uint32_t a, std::uint32_t b) {
    if (b == 0) throw domain_error("division by zero field element");
    if (a == 0) return 0;
    return t.exp[t.log[a] + t.q - t.log[b]];
}

struct LatticePoly {
    // (exponent, coefficient word), ascending exponents, no zero coefficients
    std::vector<std::pair<long long, std::uint32_t>> terms;

    bool is_zero() const { return terms.empty(); }
    long long val() const { return terms.front().first; }
    long long deg() const { return terms.back().first; }
};

inline LatticePoly lp_one() { return LatticePoly{{{0, 1}}}; }

inline LatticePoly lp_add(const LatticePoly& a, const LatticePoly& b) {
    LatticePoly out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        if (a.terms[i].first < b.terms[j].first) {
            out.terms.push_back(a.terms[i++]);
        } else if (b.terms[j].first < a.terms[i].first) {
            out.terms.push_back(b.terms[j++]);
        } else {
            const std::uint32_t c = a.terms[i].second ^ b.terms[j].second;
            if (c) out.terms.push_back({a.terms[i].first, c});
            ++i, ++j;
        }
    }
    out.terms.insert(out.terms.end(), a.terms.begin() + static_cast<std::ptrdiff_t>(i), a.terms.end());
    out.terms.insert(out.terms.end(), b.terms.begin() + static_cast<std::ptrdiff_t>(j), b.terms.end());
    return out;
}

inline LatticePoly lp_mul(const LatticePoly& a, const LatticePoly& b, const FieldTables& t) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::pair<long long, std::uint32_t>> prod;
    prod.reserve(a.terms.size() * b.terms.size());
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            prod.push_back({ea + eb, bits_mul(t, ca, cb)});
    std::sort(prod.begin(), prod.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    LatticePoly out;
    out.terms.reserve(prod.size());
    for (const auto& [e, c] : prod) {
        if (!out.terms.empty() && out.terms.back().first == e) {
            out.terms.back().second ^= c;
            if (out.terms.back().second == 0) out.terms.pop_back();
        } else if (c) {
            out.terms.push_back({e, c});
        }
    }
    return out;
}

// Exact division in the Laurent sense: both operands are shifted to
// valuation zero, divided as ordinary polynomials, and the net monomial
// shift is restored on the quotient.
inline LatticePoly lp_div_exact(const LatticePoly& a, const LatticePoly& b, const FieldTables& t) {
    if (b.is_zero()) throw domain_error("lattice polynomial division by zero");
    if (a.is_zero()) return {};
    const long long net = a.val() - b.val();
    LatticePoly rem = a;
    for (auto& term : rem.terms) term.first -= a.val();
    LatticePoly div = b;
    for (auto& term : div.terms) term.first -= b.val();

    std::vector<std::pair<long long, std::uint32_t>> quot; // descending exponent order
    while (!rem.is_zero()) {
        if (rem.deg() < div.deg())
            throw division_error("inexact lattice polynomial division");
        const long long qe = rem.deg() - div.deg();
        const std::uint32_t qc = bits_div(t, rem.terms.back().second, div.terms.back().second);
        quot.push_back({qe + net, qc});
        LatticePoly sub;
        sub.terms.reserve(div.terms.size());
        for (const auto& [e, c] : div.terms) sub.terms.push_back({e + qe, bits_mul(t, c, qc)});
        rem = lp_add(rem, sub);
    }
    std::reverse(quot.begin(), quot.end());
    return LatticePoly{std::move(quot)};
}

} // namespace detail

inline NovikovPoly exact_div(const NovikovPoly& a, const NovikovPoly& b) {
    detail::require_same_field(a, b);
    if (b.is_zero()) throw domain_error("Novikov division by zero");
    if (a.is_zero()) return NovikovPoly(a.field());

    std::vector<Rational> exps;
    for (const auto& t : a.terms()) exps.push_back(t.exponent);
    for (const auto& t : b.terms()) exps.push_back(t.exponent);
    const BigInt d = common_denominator(exps);

    const auto to_lattice = [&](const NovikovPoly& p) {
        detail::LatticePoly out;
        out.terms.reserve(p.terms().size());
        for (const auto& t : p.terms()) {
            const Rational scaled = t.exponent * Rational(d);
            out.terms.push_back({to_int64_checked(numerator(scaled)), t.coeff.bits()});
        }
        return out;
    };

    const auto& tables = detail::field_tables(a.field_degree());
    const detail::LatticePoly q = detail::lp_div_exact(to_lattice(a), to_lattice(b), tables);

    std::vector<NovikovTerm> terms;
    terms.reserve(q.terms.size());
    const FieldDescriptor fd = a.field();
    for (const auto& [e, c] : q.terms)
        terms.push_back({Rational(BigInt(e), d), FieldElement(fd, c)});
    return NovikovPoly(fd, std::move(terms));
}

// ---------------------------------------------------------------------------

/// Dense matrix of Novikov polynomials sharing one coefficient field.
class NovikovMatrix {
public:
    NovikovMatrix(int rows, int cols, const FieldDescriptor& field)
        : rows_(rows), cols_(cols), degree_(field.degree),
          entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
                   NovikovPoly(field)) {
        if (rows < 0 || cols < 0) throw domain_error("negative matrix dimensions");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int field_degree() const { return degree_; }
    FieldDescriptor field() const { return make_field(degree_); }

    const NovikovPoly& at(int i, int j) const { return entries_[index(i, j)]; }

    void set(int i, int j, NovikovPoly value) {
        if (value.field_degree() != degree_) throw domain_error("matrix entry from wrong field");
        entries_[index(i, j)] = std::move(value);
    }

    void add_at(int i, int j, const NovikovPoly& value) { set(i, j, at(i, j) + value); }

    NovikovMatrix transpose() const {
        NovikovMatrix out(cols_, rows_, field());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
        return out;
    }

    static NovikovMatrix scaled_identity(int size, const NovikovPoly& value) {
        NovikovMatrix out(size, size, value.field());
        for (int i = 0; i < size; ++i) out.set(i, i, value);
        return out;
    }

    friend bool operator==(const NovikovMatrix&, const NovikovMatrix&) = default;

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw domain_error("matrix index out of range");
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
    }

    int rows_;
    int cols_;
    int degree_;
    std::vector<NovikovPoly> entries_;
};

inline NovikovMatrix multiply(const NovikovMatrix& a, const NovikovMatrix& b) {
    if (a.field_degree() != b.field_degree()) throw domain_error("mixed-field matrix product");
    if (a.cols() != b.rows()) throw domain_error("matrix dimension mismatch");
    NovikovMatrix out(a.rows(), b.cols(), a.field());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                out.add_at(i, j, a.at(i, k) * b.at(k, j));
            }
        }
    return out;
}

enum class RankMethod { exact, probabilistic };

namespace detail {

struct LatticeMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<LatticePoly> entries; // row-major
};

// Shared exponent lattice for a whole matrix; when shift_nonnegative is set
// every entry is scaled by a common power of S so no exponent is negative
// (a global rescale, which leaves rank unchanged).
inline LatticeMatrix to_lattice(const NovikovMatrix& m, bool shift_nonnegative) {
    std::vector<Rational> exps;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& t : m.at(i, j).terms()) exps.push_back(t.exponent);
    const BigInt d = common_denominator(exps);

    LatticeMatrix out;
    out.rows = m.rows();
    out.cols = m.cols();
    out.entries.resize(static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols()));
    long long min_exp = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            LatticePoly& lp = out.entries[static_cast<std::size_t>(i) * m.cols() + j];
            for (const auto& t : m.at(i, j).terms()) {
                const long long e = to_int64_checked(numerator(t.exponent * Rational(d)));
                lp.terms.push_back({e, t.coeff.bits()});
                min_exp = std::min(min_exp, e);
            }
        }
    if (shift_nonnegative && min_exp < 0)
        for (auto& lp : out.entries)
            for (auto& t : lp.terms) t.first -= min_exp;
    return out;
}

// Fraction-free Bareiss elimination with full pivoting. The pivot is the
// nonzero entry of minimal valuation (ties broken row-major), which keeps the
// intermediate supports small. Entries after step k are (k+1)-minors of the
// permuted input, so the one-step division is exact by Sylvester's identity.
inline int lattice_rank_exact(LatticeMatrix m, const FieldTables& tables) {
    const int rows = m.rows;
    const int cols = m.cols;
    auto at = [&](int i, int j) -> LatticePoly& {
        return m.entries[static_cast<std::size_t>(i) * cols + j];
    };
    LatticePoly prev = lp_one();
    int r = 0;
    const int steps = std::min(rows, cols);
    while (r < steps) {
        int pi = -1;
        int pj = -1;
        long long best = 0;
        for (int i = r; i < rows; ++i)
            for (int j = r; j < cols; ++j) {
                const LatticePoly& e = at(i, j);
                if (e.is_zero()) continue;
                if (pi < 0 || e.val() < best) {
                    pi = i;
                    pj = j;
                    best = e.val();
                }
            }
        if (pi < 0) break;
        if (pi != r)
            for (int j = 0; j < cols; ++j) std::swap(at(pi, j), at(r, j));
        if (pj != r)
            for (int i = 0; i < rows; ++i) std::swap(at(i, pj), at(i, r));
        const LatticePoly pivot = at(r, r);
        for (int i = r + 1; i < rows; ++i) {
            if (at(i, r).is_zero()) {
                // cross term vanishes; still rescale to stay on the minor lattice
                for (int j = r + 1; j < cols; ++j)
                    at(i, j) = lp_div_exact(lp_mul(at(i, j), pivot, tables), prev, tables);
                continue;
            }
            for (int j = r + 1; j < cols; ++j)
                at(i, j) = lp_div_exact(
                    lp_add(lp_mul(at(i, j), pivot, tables), lp_mul(at(i, r), at(r, j), tables)),
                    prev, tables);
        }
        prev = pivot;
        ++r;
    }
    return r;
}

/// Evaluation degree for the probabilistic check: the smallest multiple of m
/// in [12, 16], falling back to the largest multiple that fits the table.
inline int evaluation_degree(int m) {
    for (int big = m; big <= kMaxFieldDegree; big += m)
        if (big >= 12) return big;
    int best = m;
    for (int big = m; big <= kMaxFieldDegree; big += m) best = big;
    return best;
}

inline int gaussian_rank_bits(std::vector<std::uint32_t> m, int rows, int cols,
                              const FieldTables& tables) {
    auto at = [&](int i, int j) -> std::uint32_t& {
        return m[static_cast<std::size_t>(i) * cols + j];
    };
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
        const std::uint32_t inv_piv = bits_div(tables, 1, at(r, c));
        for (int i = r + 1; i < rows; ++i) {
            if (!at(i, c)) continue;
            const std::uint32_t f = bits_mul(tables, at(i, c), inv_piv);
            for (int j = c; j < cols; ++j) at(i, j) ^= bits_mul(tables, f, at(r, j));
        }
        ++r;
    }
    return r;
}

} // namespace detail

/// Rank of M over the fraction field of the Novikov polynomial ring.
///
/// The exact method is deterministic and authoritative. The probabilistic
/// method evaluates the lattice variable at a seeded random nonzero point of
/// GF(2^m') with m' >= 12 where the table allows, and is used as a
/// cross-check only (it can underestimate with small probability).
inline int rank(const NovikovMatrix& m, RankMethod method = RankMethod::exact,
                std::uint64_t seed = 0) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (method == RankMethod::exact) {
        return detail::lattice_rank_exact(detail::to_lattice(m, /*shift_nonnegative=*/true),
                                          detail::field_tables(m.field_degree()));
    }
    const int eval_deg = detail::evaluation_degree(m.field_degree());
    const FieldDescriptor big = make_field(eval_deg);
    const auto& tables = detail::field_tables(eval_deg);
    std::mt19937_64 rng(seed);
    const FieldElement point(big, 1u + static_cast<std::uint32_t>(rng() % tables.q));

    const detail::LatticeMatrix lattice = detail::to_lattice(m, /*shift_nonnegative=*/false);
    std::vector<std::uint32_t> cells(lattice.entries.size(), 0);
    for (std::size_t k = 0; k < lattice.entries.size(); ++k) {
        FieldElement acc = FieldElement::zero(big);
        for (const auto& [e, c] : lattice.entries[k].terms) {
            const FieldElement coeff = embed(FieldElement(m.field(), c), big);
            acc = acc + coeff * gf_pow(point, e);
        }
        cells[k] = acc.bits();
    }
    return detail::gaussian_rank_bits(std::move(cells), lattice.rows, lattice.cols, tables);
}

} // namespace floertool
