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

// End-to-end runs of the installed binary: flag surface, exit codes, and
// byte-level output stability.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "floertool_exec_out.txt";
    const std::string err_path = "floertool_exec_err.txt";
    const std::string cmd =
        std::string(FLOERTOOL_BIN) + " " + args + " > " + out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    const auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

struct TempFile {
    std::string path;

    TempFile(const std::string& name, const std::string& contents)
        : path("floertool_exec_" + name) {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("hf on an odd projective space") {
    const RunResult r = run_cli("hf --polytope 'builtin:cpn(3)' --rho trivial");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"hf_rank\": 4") != std::string::npos);
    CHECK(r.out.find("\"version\"") != std::string::npos);
}

TEST_CASE("hf search reproduces the blow-up example end to end") {
    const RunResult r = run_cli("hf --polytope builtin:blowup_cp3 --rho search");
    CHECK(r.exit_code == 0);
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = r.out.find("\"hf_rank\": 4", pos)) != std::string::npos) {
        ++count;
        pos += 1;
    }
    CHECK(count == 3);
}

TEST_CASE("exact runs are byte-reproducible apart from timing") {
    const std::string args = "hf --polytope 'builtin:rp_product(1,1)' --rho trivial";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    const auto results_of = [](const std::string& text) {
        const std::size_t at = text.find("\"results\"");
        return text.substr(at);
    };
    CHECK(results_of(a.out) == results_of(b.out));
    CHECK(a.out.find("\"hf_rank\": 4") != std::string::npos);
    CHECK(a.out.find("\"delta_rank\": 6") != std::string::npos);
}

TEST_CASE("validate reports diagnostics without failing the process") {
    TempFile boundary("boundary.json",
                      R"({"n": 1, "facets": [{"v": [1], "lambda": "0/1"},
                          {"v": [-1], "lambda": "-2/1"}], "c": ["0/1"]})");
    const RunResult r = run_cli("validate --polytope " + boundary.path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"ok\": false") != std::string::npos);
    CHECK(r.out.find("\"facet\": 0") != std::string::npos);
}

TEST_CASE("exit codes") {
    SECTION("parse error for a missing file") {
        const RunResult r = run_cli("hf --polytope missing.json --rho trivial");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("parse error") != std::string::npos);
    }

    SECTION("parse error for an unknown flag") {
        const RunResult r = run_cli("hf --polytope builtin:cpn(1) --bogus 3");
        CHECK(r.exit_code == 2);
    }

    SECTION("domain error for an unknown builtin") {
        const RunResult r = run_cli("hf --polytope builtin:dodecahedron --rho trivial");
        CHECK(r.exit_code == 1);
    }

    SECTION("domain error for a non-critical product bound") {
        TempFile rho("rho.json", R"({"m": 2, "values": ["01", "10"]})");
        const RunResult r = run_cli("product-bound --polytope 'builtin:cpn(2)' --rho " + rho.path);
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("critical") != std::string::npos);
    }

    SECTION("budget exhaustion") {
        const RunResult r =
            run_cli("critical-points --polytope 'builtin:cpn(4)' --rho search --max-degree 8");
        CHECK(r.exit_code == 3);
        CHECK(r.out.find("budget_exceeded_at_layer") != std::string::npos);
    }
}

TEST_CASE("table format") {
    const RunResult r =
        run_cli("hf --polytope builtin:blowup_cp3 --rho search --format table");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("hf_rank") != std::string::npos);
    CHECK(r.out.find("yes") != std::string::npos);
}

TEST_CASE("selftest prints one line per criterion and exits zero") {
    const RunResult r = run_cli("selftest --format table");
    CHECK(r.exit_code == 0);
    std::size_t pass_lines = 0;
    std::size_t pos = 0;
    while ((pos = r.out.find("PASS", pos)) != std::string::npos) {
        ++pass_lines;
        pos += 4;
    }
    CHECK(pass_lines >= 9);
}
