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

// One job per process: a JobSpec names the command, the polytope and rho
// sources, and the options; run() dispatches into the modules and returns a
// Report (job echo, results payload, timing, tool version). JSON emission is
// canonical and, timing aside, bit-reproducible for exact methods. Non-builtin
// inputs are normalized up front, so file-based rho values are always read in
// the normalized frame.

#pragma once

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "floertool/errors.hpp"
#include "floertool/floer.hpp"
#include "floertool/io.hpp"
#include "floertool/polytope.hpp"
#include "floertool/potential.hpp"
#include "floertool/selftest.hpp"
#include "floertool/version.hpp"

namespace floertool {

enum class Command { validate, energies, critical_points, hf, product_bound, example, selftest };
enum class OutputFormat { json, table };

inline Command command_from_string(const std::string& s) {
    if (s == "validate") return Command::validate;
    if (s == "energies") return Command::energies;
    if (s == "critical-points") return Command::critical_points;
    if (s == "hf") return Command::hf;
    if (s == "product-bound") return Command::product_bound;
    if (s == "example") return Command::example;
    if (s == "selftest") return Command::selftest;
    throw parse_error("unknown command '" + s + "'");
}

inline std::string to_string(Command c) {
    switch (c) {
        case Command::validate: return "validate";
        case Command::energies: return "energies";
        case Command::critical_points: return "critical-points";
        case Command::hf: return "hf";
        case Command::product_bound: return "product-bound";
        case Command::example: return "example";
        case Command::selftest: return "selftest";
    }
    return "?";
}

struct JobSpec {
    Command command = Command::validate;
    std::string polytope_source; // "builtin:NAME" or a file path
    std::string rho_source;      // "trivial", "search", or a file path
    int max_degree = 8;
    RankMethod method = RankMethod::exact;
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = 0;
};

struct Report {
    JobSpec job;
    nlohmann::json results;
    std::uint64_t timing_us = 0;
    std::string version = kVersion;
};

// exit codes: 0 success, 1 domain error, 2 parse error, 3 budget exceeded
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitBudget = 3;

namespace detail {

inline std::pair<FanoPolytope, InteriorPoint> load_polytope(const std::string& source) {
    if (source.empty()) throw parse_error("--polytope is required for this command");
    if (source.rfind("builtin:", 0) == 0) return builtin(source.substr(8));
    return io::load_polytope_file(source);
}

inline RhoAssignment load_rho(const std::string& source, int n) {
    if (source.empty()) throw parse_error("--rho is required for this command");
    if (source == "trivial") return trivial_rho(n);
    RhoAssignment rho = io::load_rho_file(source);
    require_rho(rho, n);
    return rho;
}

inline nlohmann::json job_json(const JobSpec& spec) {
    return nlohmann::json{{"command", to_string(spec.command)},
                          {"polytope", spec.polytope_source},
                          {"rho", spec.rho_source},
                          {"max_degree", spec.max_degree},
                          {"method", spec.method == RankMethod::exact ? "exact" : "probabilistic"},
                          {"format", spec.format == OutputFormat::json ? "json" : "table"},
                          {"seed", spec.seed}};
}

inline nlohmann::json hf_point_json(const CriticalReport& rep, const FanoPolytope& p,
                                    const InteriorPoint& c, RankMethod method,
                                    std::uint64_t seed) {
    nlohmann::json entry{{"report", io::to_json(rep)}};
    if (rep.defined) entry["hf"] = io::to_json(hf_rank(p, c, rep.rho, method, seed));
    return entry;
}

inline nlohmann::json selftest_json(const std::vector<CriterionResult>& results) {
    nlohmann::json items = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        items.push_back(nlohmann::json{{"id", r.id},
                                       {"name", r.name},
                                       {"pass", r.pass},
                                       {"detail", r.detail},
                                       {"seconds", r.seconds}});
    }
    return nlohmann::json{{"criteria", std::move(items)}, {"all_pass", all}};
}

} // namespace detail

inline Report run(const JobSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    report.job = spec;
    nlohmann::json& results = report.results;

    switch (spec.command) {
        case Command::validate: {
            auto [p, c] = detail::load_polytope(spec.polytope_source);
            results = io::to_json(validate(p, c));
            break;
        }
        case Command::energies: {
            auto [p, c] = detail::load_polytope(spec.polytope_source);
            results = nlohmann::json{{"energies", io::to_json(energies(p, c))}};
            break;
        }
        case Command::critical_points: {
            auto [p0, c0] = detail::load_polytope(spec.polytope_source);
            auto [p, c] = normalize(p0, c0);
            const std::string rho_source = spec.rho_source.empty() ? "search" : spec.rho_source;
            if (rho_source == "search") {
                results = io::to_json(find_critical(p, c, spec.max_degree));
            } else {
                const RhoAssignment rho = detail::load_rho(rho_source, p.n);
                results = nlohmann::json{{"report", io::to_json(evaluate_rho(p, c, rho))}};
            }
            break;
        }
        case Command::hf: {
            auto [p0, c0] = detail::load_polytope(spec.polytope_source);
            auto [p, c] = normalize(p0, c0);
            if (spec.rho_source == "search") {
                const CriticalSearch search = find_critical(p, c, spec.max_degree);
                nlohmann::json points = nlohmann::json::array();
                for (const auto& rep : search.reports)
                    points.push_back(detail::hf_point_json(rep, p, c, spec.method, spec.seed));
                results = nlohmann::json{{"points", std::move(points)}};
                results["search"] = io::to_json(search);
                results["search"].erase("reports");
            } else {
                const RhoAssignment rho = detail::load_rho(spec.rho_source, p.n);
                results = nlohmann::json{{"hf", io::to_json(hf_rank(p, c, rho, spec.method, spec.seed))}};
            }
            break;
        }
        case Command::product_bound: {
            auto [p0, c0] = detail::load_polytope(spec.polytope_source);
            auto [p, c] = normalize(p0, c0);
            if (spec.rho_source == "search") {
                const CriticalSearch search = find_critical(p, c, spec.max_degree);
                nlohmann::json points = nlohmann::json::array();
                for (const auto& rep : search.reports) {
                    const ProductBound b = product_bound(p, c, rep.rho, spec.method, spec.seed);
                    points.push_back(nlohmann::json{{"rho", io::to_json(rep.rho)},
                                                    {"product", io::to_json(b)}});
                }
                results = nlohmann::json{{"points", std::move(points)}};
                results["search"] = io::to_json(search);
                results["search"].erase("reports");
            } else {
                const RhoAssignment rho = detail::load_rho(spec.rho_source, p.n);
                const ProductBound b = product_bound(p, c, rho, spec.method, spec.seed);
                results = nlohmann::json{{"product", io::to_json(b)}};
            }
            break;
        }
        case Command::example: {
            auto [p0, c0] = detail::load_polytope(spec.polytope_source);
            results["diagnostics"] = io::to_json(validate(p0, c0));
            auto [p, c] = normalize(p0, c0);
            results["polytope"] = io::to_json(p, c);
            results["energies"] = io::to_json(energies(p, c));
            const CriticalSearch search = find_critical(p, c, spec.max_degree);
            results["search"] = io::to_json(search);
            nlohmann::json points = nlohmann::json::array();
            for (const auto& rep : search.reports) {
                nlohmann::json entry = detail::hf_point_json(rep, p, c, spec.method, spec.seed);
                entry["product"] = io::to_json(product_bound(p, c, rep.rho, spec.method, spec.seed));
                points.push_back(std::move(entry));
            }
            results["points"] = std::move(points);
            break;
        }
        case Command::selftest: {
            results = detail::selftest_json(run_acceptance());
            break;
        }
    }

    report.timing_us = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    return report;
}

/// Exit code implied by a completed report (budget and selftest outcomes are
/// carried in the payload rather than thrown).
inline int suggested_exit_code(const Report& report) {
    const auto budget_hit = [](const nlohmann::json& j) {
        return j.contains("search") ? j["search"].contains("budget_exceeded_at_layer")
                                    : j.contains("budget_exceeded_at_layer");
    };
    if (report.job.command == Command::selftest && !report.results.value("all_pass", true))
        return kExitDomainError;
    if ((report.job.command == Command::critical_points || report.job.command == Command::hf ||
         report.job.command == Command::product_bound || report.job.command == Command::example) &&
        budget_hit(report.results))
        return kExitBudget;
    return kExitOk;
}

// --------------------------------------------------------------------------
// Emission.

namespace detail {

class TableWriter {
public:
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    std::string render() const {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            if (width.size() < r.size()) width.resize(r.size(), 0);
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        }
        std::string out;
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                out += r[i];
                if (i + 1 < r.size()) out += std::string(width[i] - r[i].size() + 2, ' ');
            }
            out += "\n";
        }
        return out;
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

inline std::string poly_cell(const nlohmann::json& poly_json) {
    if (!poly_json.is_array() || poly_json.empty()) return "0";
    std::string out;
    for (const auto& term : poly_json) {
        if (!out.empty()) out += " + ";
        const std::string bits = term["coeff"].value("bits", "");
        const bool is_one = !bits.empty() && bits[0] == '1' && bits.find('1', 1) == std::string::npos;
        if (!is_one) out += "{" + bits + "}";
        out += "T^(" + term.value("exp", "") + ")";
    }
    return out;
}

inline std::string rho_cell(const nlohmann::json& rho_json) {
    return io::to_string(io::rho_from_json(rho_json, "payload"));
}

inline std::string hf_cell(const nlohmann::json& hf) {
    if (!hf.value("defined", false)) return "undefined";
    return std::to_string(hf.value("hf_rank", 0));
}

inline std::string render_table(const Report& report) {
    TableWriter t;
    const nlohmann::json& r = report.results;
    switch (report.job.command) {
        case Command::validate: {
            t.row({"valid", r.value("ok", false) ? "yes" : "no"});
            for (const auto& issue : r.value("issues", nlohmann::json::array()))
                t.row({"issue", issue.value("message", "")});
            break;
        }
        case Command::energies: {
            t.row({"facet", "energy"});
            int j = 0;
            for (const auto& e : r.value("energies", nlohmann::json::array()))
                t.row({std::to_string(j++), e.get<std::string>()});
            break;
        }
        case Command::critical_points: {
            if (r.contains("reports")) {
                t.row({"rho", "defined", "nonvanishing", "W"});
                for (const auto& rep : r["reports"])
                    t.row({rho_cell(rep["rho"]), rep.value("defined", false) ? "yes" : "no",
                           rep.value("nonvanishing", false) ? "yes" : "no",
                           poly_cell(rep["w_value"])});
                t.row({"layers", std::to_string(r.value("layers_completed", 0))});
                if (r.contains("budget_exceeded_at_layer"))
                    t.row({"budget exceeded at layer",
                           std::to_string(r["budget_exceeded_at_layer"].get<int>())});
            } else if (r.contains("report")) {
                const auto& rep = r["report"];
                t.row({"rho", rho_cell(rep["rho"])});
                t.row({"defined", rep.value("defined", false) ? "yes" : "no"});
                t.row({"nonvanishing", rep.value("nonvanishing", false) ? "yes" : "no"});
                t.row({"W", poly_cell(rep["w_value"])});
            }
            break;
        }
        case Command::hf: {
            if (r.contains("hf")) {
                const auto& hf = r["hf"];
                t.row({"defined", hf.value("defined", false) ? "yes" : "no"});
                if (hf.value("defined", false)) {
                    t.row({"delta_rank", std::to_string(hf.value("delta_rank", 0))});
                    t.row({"hf_rank", std::to_string(hf.value("hf_rank", 0))});
                } else {
                    t.row({"obstruction", poly_cell(hf["obstruction"])});
                }
            } else {
                t.row({"rho", "defined", "hf_rank"});
                for (const auto& point : r.value("points", nlohmann::json::array())) {
                    const auto& rep = point["report"];
                    t.row({rho_cell(rep["rho"]), rep.value("defined", false) ? "yes" : "no",
                           point.contains("hf") ? hf_cell(point["hf"]) : "-"});
                }
            }
            break;
        }
        case Command::product_bound: {
            if (r.contains("product")) {
                t.row({"product_hf_rank", std::to_string(r["product"].value("hf_rank", 0))});
                t.row({"bound", std::to_string(r["product"].value("bound", 0))});
            } else {
                t.row({"rho", "product_hf_rank", "bound"});
                for (const auto& point : r.value("points", nlohmann::json::array()))
                    t.row({rho_cell(point["rho"]),
                           std::to_string(point["product"].value("hf_rank", 0)),
                           std::to_string(point["product"].value("bound", 0))});
            }
            break;
        }
        case Command::example: {
            t.row({"valid", r["diagnostics"].value("ok", false) ? "yes" : "no"});
            t.row({"rho", "defined", "hf_rank", "bound"});
            for (const auto& point : r.value("points", nlohmann::json::array())) {
                const auto& rep = point["report"];
                t.row({rho_cell(rep["rho"]), rep.value("defined", false) ? "yes" : "no",
                       point.contains("hf") ? hf_cell(point["hf"]) : "-",
                       std::to_string(point["product"].value("bound", 0))});
            }
            break;
        }
        case Command::selftest: {
            t.row({"status", "id", "criterion", "seconds"});
            for (const auto& item : r.value("criteria", nlohmann::json::array())) {
                std::ostringstream sec;
                sec << std::fixed << std::setprecision(3) << item.value("seconds", 0.0);
                t.row({item.value("pass", false) ? "PASS" : "FAIL",
                       std::to_string(item.value("id", 0)), item.value("name", ""), sec.str()});
                const std::string detail = item.value("detail", "");
                if (!item.value("pass", false) && !detail.empty()) t.row({"", "", detail, ""});
            }
            t.row({r.value("all_pass", false) ? "PASS" : "FAIL", "", "overall", ""});
            break;
        }
    }
    return t.render();
}

} // namespace detail

inline nlohmann::json report_json(const Report& report) {
    return nlohmann::json{{"job", detail::job_json(report.job)},
                          {"results", report.results},
                          {"meta", nlohmann::json{{"timing_us", report.timing_us},
                                                  {"version", report.version}}}};
}

inline std::string emit(const Report& report, OutputFormat format) {
    if (format == OutputFormat::json) return io::canonical_dump(report_json(report));
    return detail::render_table(report);
}

inline std::string emit(const Report& report) { return emit(report, report.job.format); }

} // namespace floertool
