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

// JSON encodings of every public value. Emission is canonical: object keys
// sorted, rationals as "p/q" in lowest terms with explicit denominator, field
// elements as degree-ascending bit strings. Parsers name the offending file
// and field on failure.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "floertool/errors.hpp"
#include "floertool/floer.hpp"
#include "floertool/gf2.hpp"
#include "floertool/novikov.hpp"
#include "floertool/polytope.hpp"
#include "floertool/potential.hpp"
#include "floertool/rational.hpp"

namespace floertool::io {

using json = nlohmann::json;

// --------------------------------------------------------------------------
// Rendering helpers shared with the table emitter and test messages.

inline std::string bit_string(const FieldElement& a) {
    std::string s(static_cast<std::size_t>(a.degree()), '0');
    for (int k = 0; k < a.degree(); ++k)
        if ((a.bits() >> k) & 1u) s[static_cast<std::size_t>(k)] = '1';
    return s;
}

inline std::string to_string(const Rational& r) { return to_pq_string(r); }

inline std::string to_string(const NovikovPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& t : p.terms()) {
        if (!out.empty()) out += " + ";
        if (t.coeff.bits() != 1) out += "{" + bit_string(t.coeff) + "}";
        out += "T^(" + to_pq_string(t.exponent) + ")";
    }
    return out;
}

inline std::string to_string(const RhoAssignment& rho) {
    std::string out = "GF(2^" + std::to_string(rho.field.degree) + "):(";
    for (std::size_t i = 0; i < rho.values.size(); ++i) {
        if (i) out += ",";
        out += bit_string(rho.values[i]);
    }
    return out + ")";
}

// --------------------------------------------------------------------------
// Encoders.

inline json to_json(const FieldElement& a) {
    return json{{"m", a.degree()}, {"bits", bit_string(a)}};
}

inline json to_json(const NovikovPoly& p) {
    json terms = json::array();
    for (const auto& t : p.terms())
        terms.push_back(json{{"exp", to_pq_string(t.exponent)}, {"coeff", to_json(t.coeff)}});
    return terms;
}

inline json to_json(const NovikovMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const FanoPolytope& p, const InteriorPoint& c) {
    json facets = json::array();
    for (const auto& f : p.facets) {
        json v = json::array();
        for (long long x : f.normal) v.push_back(x);
        facets.push_back(json{{"v", std::move(v)}, {"lambda", to_pq_string(f.lambda)}});
    }
    json point = json::array();
    for (const auto& x : c.c) point.push_back(to_pq_string(x));
    json out{{"n", p.n}, {"facets", std::move(facets)}, {"c", std::move(point)}};
    if (!p.name.empty()) out["name"] = p.name;
    return out;
}

inline json to_json(const EnergyVector& e) {
    json out = json::array();
    for (const auto& x : e.e) out.push_back(to_pq_string(x));
    return out;
}

inline json to_json(const Diagnostics& d) {
    json issues = json::array();
    for (const auto& issue : d.issues) {
        json item{{"message", issue.message}};
        if (issue.facet) item["facet"] = *issue.facet;
        issues.push_back(std::move(item));
    }
    return json{{"ok", d.ok}, {"issues", std::move(issues)}};
}

inline json to_json(const RhoAssignment& rho) {
    json values = json::array();
    for (const auto& v : rho.values) values.push_back(to_json(v));
    return json{{"m", rho.field.degree}, {"values", std::move(values)}};
}

inline json to_json(const CriticalReport& r) {
    json z = json::array();
    for (const auto& zi : r.z_values) z.push_back(to_json(zi));
    return json{{"rho", to_json(r.rho)},
                {"w_value", to_json(r.w_value)},
                {"z_values", std::move(z)},
                {"defined", r.defined},
                {"nonvanishing", r.nonvanishing}};
}

inline json to_json(const CriticalSearch& s) {
    json reports = json::array();
    for (const auto& r : s.reports) reports.push_back(to_json(r));
    json out{{"reports", std::move(reports)},
             {"layers_completed", s.layers_completed},
             {"candidates_tested", s.candidates_tested}};
    if (s.budget_exceeded_at) out["budget_exceeded_at_layer"] = *s.budget_exceeded_at;
    return out;
}

inline json to_json(const HFResult& r) {
    json out{{"defined", r.defined}, {"obstruction", to_json(r.obstruction)}};
    if (r.delta_rank) out["delta_rank"] = *r.delta_rank;
    if (r.hf_rank) out["hf_rank"] = *r.hf_rank;
    return out;
}

inline json to_json(const ProductBound& b) {
    json out = to_json(b.product_hf);
    out["bound"] = b.bound;
    return out;
}

// --------------------------------------------------------------------------
// Decoders. Each takes a JSON pointer-style path for error context.

namespace detail {

inline const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw parse_error(path + ": missing field '" + key + "'");
    return j.at(key);
}

inline int int_field(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw parse_error(path + ": expected an integer");
    return j.get<int>();
}

inline Rational rational_field(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw parse_error(path + ": expected a \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

} // namespace detail

inline FieldElement field_element_from_json(const json& j, const std::string& path) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const FieldDescriptor fd = make_field(static_cast<int>(s.size()));
        std::uint32_t bits = 0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] == '1')
                bits |= 1u << k;
            else if (s[k] != '0')
                throw parse_error(path + ": bit string must contain only 0/1");
        }
        return FieldElement(fd, bits);
    }
    const int m = detail::int_field(detail::member(j, "m", path), path + ".m");
    const json& bits_j = detail::member(j, "bits", path);
    if (!bits_j.is_string()) throw parse_error(path + ".bits: expected a 0/1 string");
    const std::string s = bits_j.get<std::string>();
    if (static_cast<int>(s.size()) != m)
        throw parse_error(path + ".bits: expected exactly " + std::to_string(m) + " bits");
    const FieldDescriptor fd = make_field(m);
    std::uint32_t bits = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '1')
            bits |= 1u << k;
        else if (s[k] != '0')
            throw parse_error(path + ".bits: bit string must contain only 0/1");
    }
    return FieldElement(fd, bits);
}

inline NovikovPoly novikov_from_json(const json& j, const FieldDescriptor& field,
                                     const std::string& path) {
    if (!j.is_array()) throw parse_error(path + ": expected a term list");
    std::vector<NovikovTerm> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const json& term = j.at(i);
        terms.push_back({detail::rational_field(detail::member(term, "exp", p), p + ".exp"),
                         field_element_from_json(detail::member(term, "coeff", p), p + ".coeff")});
    }
    return NovikovPoly(field, std::move(terms));
}

inline std::pair<FanoPolytope, InteriorPoint> polytope_from_json(const json& j,
                                                                 const std::string& path) {
    FanoPolytope p;
    p.n = detail::int_field(detail::member(j, "n", path), path + ".n");
    const json& facets = detail::member(j, "facets", path);
    if (!facets.is_array()) throw parse_error(path + ".facets: expected an array");
    for (std::size_t k = 0; k < facets.size(); ++k) {
        const std::string fp = path + ".facets[" + std::to_string(k) + "]";
        const json& fj = facets.at(k);
        Facet f;
        const json& v = detail::member(fj, "v", fp);
        if (!v.is_array()) throw parse_error(fp + ".v: expected an integer array");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v.at(i).is_number_integer()) throw parse_error(fp + ".v: expected integers");
            f.normal.push_back(v.at(i).get<long long>());
        }
        f.lambda = detail::rational_field(detail::member(fj, "lambda", fp), fp + ".lambda");
        p.facets.push_back(std::move(f));
    }
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw parse_error(path + ".name: expected a string");
        p.name = j.at("name").get<std::string>();
    }
    InteriorPoint c;
    const json& cj = detail::member(j, "c", path);
    if (!cj.is_array()) throw parse_error(path + ".c: expected an array of rationals");
    for (std::size_t i = 0; i < cj.size(); ++i)
        c.c.push_back(detail::rational_field(cj.at(i), path + ".c[" + std::to_string(i) + "]"));
    return {std::move(p), std::move(c)};
}

inline RhoAssignment rho_from_json(const json& j, const std::string& path) {
    const int m = detail::int_field(detail::member(j, "m", path), path + ".m");
    RhoAssignment rho{make_field(m), {}};
    const json& values = detail::member(j, "values", path);
    if (!values.is_array()) throw parse_error(path + ".values: expected an array");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string vp = path + ".values[" + std::to_string(i) + "]";
        FieldElement v = field_element_from_json(values.at(i), vp);
        if (v.degree() != m) throw parse_error(vp + ": value degree differs from rho field");
        rho.values.push_back(v);
    }
    return rho;
}

// --------------------------------------------------------------------------
// Files.

inline json parse_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw parse_error(filename + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < e.byte; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error(filename + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": " + e.what());
    }
}

inline std::pair<FanoPolytope, InteriorPoint> load_polytope_file(const std::string& filename) {
    return polytope_from_json(parse_file(filename), filename);
}

inline RhoAssignment load_rho_file(const std::string& filename) {
    return rho_from_json(parse_file(filename), filename);
}

/// Canonical byte form: two-space indentation, sorted keys, trailing newline.
inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace floertool::io
