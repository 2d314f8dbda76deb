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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "floertool/cli.hpp"

namespace {

constexpr const char* kDescription =
    "floertool: exact combinatorial Floer complexes for moment polytopes\n"
    "\n"
    "Commands:\n"
    "  validate         check a polytope file against the shape invariants\n"
    "  energies         per-facet energies <c,v_j> - lambda_j\n"
    "  critical-points  evaluate a local system or search field extensions\n"
    "  hf               Floer cohomology rank over the Novikov field\n"
    "  product-bound    ceil(sqrt(rank)) intersection bound via the product trick\n"
    "  example          full report for one polytope (search, HF, bounds)\n"
    "  selftest         run the acceptance corpus; nonzero exit on any failure\n";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{kDescription};
    app.get_formatter()->column_width(28);

    std::string command;
    std::string polytope;
    std::string rho;
    int max_degree = 8;
    std::string method = "exact";
    std::string format = "json";
    std::uint64_t seed = 0;

    app.add_option("command", command,
                   "validate | energies | critical-points | hf | product-bound | example | selftest")
        ->required();
    app.add_option("--polytope", polytope, "polytope file path or builtin:NAME "
                                           "(cpn(k), blowup_cp3, rp_product(k,j))");
    app.add_option("--rho", rho, "rho file path, 'trivial', or 'search'");
    app.add_option("--max-degree", max_degree, "largest field degree searched (default 8)");
    app.add_option("--method", method, "rank method: exact | probabilistic")
        ->check(CLI::IsMember({"exact", "probabilistic"}));
    app.add_option("--format", format, "output format: json | table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", seed, "seed for the probabilistic rank cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return floertool::kExitParseError;
    }

    floertool::JobSpec spec;
    try {
        spec.command = floertool::command_from_string(command);
        spec.polytope_source = polytope;
        spec.rho_source = rho;
        spec.max_degree = max_degree;
        spec.method = method == "exact" ? floertool::RankMethod::exact
                                        : floertool::RankMethod::probabilistic;
        spec.format = format == "json" ? floertool::OutputFormat::json
                                       : floertool::OutputFormat::table;
        spec.seed = seed;

        const floertool::Report report = floertool::run(spec);
        std::cout << floertool::emit(report);
        return floertool::suggested_exit_code(report);
    } catch (const floertool::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return floertool::kExitParseError;
    } catch (const floertool::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return floertool::kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return floertool::kExitDomainError;
    }
}
