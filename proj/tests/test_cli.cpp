/*
 Copyright 2026 The gramsched Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
// End-to-end checks of the command-line tool: exit codes, file contents,
// and reproducibility.

#include "gramsched/io.hpp"
#include "gramsched/scheduler.hpp"
#include "gramsched/system_model.hpp"

#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace gramsched;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "gramsched_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

/// Runs the CLI with `args`; stderr is captured into err.txt.
int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + GRAMSCHED_CLI_PATH + " " + args + " > " + path("out.txt") + " 2> " +
                            path("err.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> csv(const std::string& file) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(file));
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("random-system and schedule") {
    REQUIRE(run("random-system --n 4 --m 3 --p 3 --seed 7 --out " + path("sys4.json")) == 0);
    const LtiSystem sys = io::system_from_json(io::read_json(path("sys4.json")));
    CHECK(sys.n() == 4);

    SUBCASE("joint schedule succeeds and re-verifies identically") {
        const std::string sched = path("joint.json");
        const std::string report = path("joint_report.json");
        REQUIRE(run("schedule --system " + path("sys4.json") + " --t 12 --ds 1 --da 1 --mode joint --out " + sched +
                    " --report " + report) == 0);
        const io::Json rep = io::read_json(report);
        CHECK(rep["certified"] == true);
        CHECK(rep["sensors"]["pass"] == true);
        CHECK(rep["actuators"]["pass"] == true);
        CHECK(rep["provenance"] == "joint");

        REQUIRE(run("verify --system " + path("sys4.json") + " --schedule " + sched + " --report " +
                    path("again.json")) == 0);
        CHECK(slurp(path("again.json")) == slurp(report));
        REQUIRE(run("verify --system " + path("sys4.json") + " --schedule " + sched) == 0);
        CHECK(io::Json::parse(slurp(path("out.txt"))) == rep);
    }
    SUBCASE("full budgets") {
        REQUIRE(run("schedule --system " + path("sys4.json") + " --t 12 --ds 3 --da 3 --out " + path("full.json") +
                    " --report " + path("full_report.json")) == 0);
        const io::Json rep = io::read_json(path("full_report.json"));
        CHECK(rep["joint"]["epsilon_empirical"].get<double>() <= 1e-8);
        CHECK(rep["sensors"]["epsilon_empirical"].get<double>() <= 1e-8);
        CHECK(rep["provenance"] == "full");
    }
    SUBCASE("every mode and variant") {
        for (const char* mode : {"joint", "separation", "sensor", "actuator"}) {
            for (const char* variant : {"proof", "listing"}) {
                CHECK(run("schedule --system " + path("sys4.json") + " --t 12 --ds 1.5 --da 1.5 --mode " + mode +
                          " --variant " + variant + " --normalize --out " + path("m.json") + " --report " +
                          path("m_report.json")) == 0);
            }
        }
        CHECK(io::read_json(path("m_report.json")).contains("normalized"));
    }
    SUBCASE("trace output") {
        REQUIRE(run("schedule --system " + path("sys4.json") + " --t 12 --ds 1 --da 1 --trace " + path("trace.jsonl") +
                    " --out " + path("t.json") + " --report " + path("t_report.json")) == 0);
        std::istringstream in(slurp(path("trace.jsonl")));
        std::string line;
        int lines = 0;
        while (std::getline(in, line)) {
            const auto j = io::Json::parse(line);
            CHECK(j["lower"].get<double>() < j["lambda_min"].get<double>());
            CHECK(j["lambda_max"].get<double>() < j["upper"].get<double>());
            ++lines;
        }
        CHECK(lines == 26);  // two passes of 12 iterations plus final records
    }
    SUBCASE("horizon shorter than n") {
        CHECK(run("schedule --system " + path("sys4.json") + " --t 3 --ds 1 --da 1") == 1);
        CHECK(slurp(path("err.txt")).find("horizon") != std::string::npos);
    }
    SUBCASE("input errors") {
        CHECK(run("schedule --system " + path("missing.json") + " --t 12 --ds 1 --da 1") == 1);
        {
            std::ofstream(path("broken.json")) << "{\"n\": 2,";
        }
        CHECK(run("schedule --system " + path("broken.json") + " --t 12 --ds 1 --da 1") == 1);
        CHECK(run("schedule --system " + path("sys4.json") + " --t 12 --ds 0.25 --da 1") == 1);  // d t <= n
        CHECK(run("schedule --system " + path("sys4.json") + " --t 12 --ds 1") == 1);  // joint needs --da
        CHECK(run("schedule --t 12") == 1);
        CHECK(run("bogus-command") == 1);
        CHECK(run("schedule --system " + path("sys4.json") + " --t 12 --ds 1 --da 1 --mode both") == 1);
        CHECK(run("--help") == 0);
    }
    SUBCASE("non-minimal system is an input error with rank diagnostics") {
        Matrix B(2, 1);
        B << 1, 0;
        io::write_json(path("nonmin.json"),
                       io::system_to_json(LtiSystem(0.5 * Matrix::Identity(2, 2), B, Matrix::Identity(2, 2))));
        CHECK(run("schedule --system " + path("nonmin.json") + " --t 6 --ds 1 --da 0.5") == 1);
        CHECK(slurp(path("err.txt")).find("rank") != std::string::npos);
    }
    SUBCASE("tampered schedule is a bound violation") {
        const LtiSystem s = io::system_from_json(io::read_json(path("sys4.json")));
        Schedule sched = joint_schedule(s, 12, 1.0, 1.0);
        sched.scale_sensors(10.0);
        io::write_json(path("tampered.json"), io::schedule_to_json(sched));
        CHECK(run("verify --system " + path("sys4.json") + " --schedule " + path("tampered.json")) == 2);
    }
}

TEST_CASE("determinism of schedule files") {
    REQUIRE(run("random-system --n 4 --m 3 --p 3 --seed 8 --out " + path("d.json")) == 0);
    for (int rep = 0; rep < 2; ++rep) {
        REQUIRE(run("schedule --system " + path("d.json") + " --t 12 --ds 1 --da 1.5 --out " +
                    path("d" + std::to_string(rep) + "_s.json") + " --report " +
                    path("d" + std::to_string(rep) + "_r.json")) == 0);
    }
    CHECK(slurp(path("d0_s.json")) == slurp(path("d1_s.json")));
    CHECK(slurp(path("d0_r.json")) == slurp(path("d1_r.json")));
}

TEST_CASE("heatmap") {
    SUBCASE("single active pair") {
        Schedule s(5, 2, 3, Provenance::Joint);
        s.set_sensor(3, 2, 2.0);
        io::write_json(path("single.json"), io::schedule_to_json(s));
        REQUIRE(run("heatmap --schedule " + path("single.json") + " --out " + path("single")) == 0);
        const auto rows = csv(path("single_sensors.csv"));
        REQUIRE(rows.size() == 4);  // header + p rows
        for (std::size_t i = 1; i < rows.size(); ++i) {
            REQUIRE(rows[i].size() == 6);
            for (std::size_t k = 1; k < rows[i].size(); ++k)
                CHECK(rows[i][k] == ((i - 1 == 2 && k - 1 == 3) ? "4" : "0"));
        }
        CHECK(csv(path("single_actuators.csv")).size() == 3);
    }
    SUBCASE("full schedule") {
        io::write_json(path("fullh.json"), io::schedule_to_json(Schedule::full(4, 2, 3)));
        REQUIRE(run("heatmap --schedule " + path("fullh.json") + " --out " + path("fullh")) == 0);
        for (const char* side : {"_sensors.csv", "_actuators.csv"}) {
            const auto rows = csv(path(std::string("fullh") + side));
            for (std::size_t i = 1; i < rows.size(); ++i)
                for (std::size_t k = 1; k < rows[i].size(); ++k) CHECK(rows[i][k] == "1");
        }
    }
    SUBCASE("nonzero counts agree with average cardinalities") {
        REQUIRE(run("swing --generators 4 --seed 3 --out " + path("sw4.json")) == 0);
        REQUIRE(run("schedule --system " + path("sw4.json") + " --t 16 --ds 2 --da 1 --out " + path("sw4_s.json") +
                    " --report " + path("sw4_r.json")) == 0);
        REQUIRE(run("heatmap --schedule " + path("sw4_s.json") + " --out " + path("sw4")) == 0);
        const Schedule s = io::schedule_from_json(io::read_json(path("sw4_s.json")));
        const auto avg = average_cardinalities(s);
        auto nonzeros = [](const std::vector<std::vector<std::string>>& rows) {
            int count = 0;
            for (std::size_t i = 1; i < rows.size(); ++i)
                for (std::size_t k = 1; k < rows[i].size(); ++k) count += rows[i][k] != "0";
            return count;
        };
        CHECK(nonzeros(csv(path("sw4_sensors.csv"))) == doctest::Approx(avg.sensors * 16));
        CHECK(nonzeros(csv(path("sw4_actuators.csv"))) == doctest::Approx(avg.actuators * 16));
    }
    SUBCASE("missing file") { CHECK(run("heatmap --schedule " + path("nope.json")) == 1); }
}

TEST_CASE("swing") {
    SUBCASE("g = 10 dimensions and minimality") {
        REQUIRE(run("swing --generators 10 --seed 42 --out " + path("sw10.json") + " --params-out " +
                    path("sw10_params.json")) == 0);
        const LtiSystem sys = io::system_from_json(io::read_json(path("sw10.json")));
        CHECK(sys.n() == 20);
        CHECK(sys.m() == 10);
        CHECK(sys.p() == 20);
        CHECK(validate_minimal(sys, 20).minimal());
        // Regenerating from the written parameter file gives the same system.
        REQUIRE(run("swing --params " + path("sw10_params.json") + " --out " + path("sw10b.json")) == 0);
        CHECK(slurp(path("sw10.json")) == slurp(path("sw10b.json")));
    }
    SUBCASE("single undamped uncoupled generator") {
        io::Json p;
        p["inertia"] = {1.0};
        p["damping"] = {0.0};
        p["coupling"] = {0.0};
        p["dt"] = 0.2;
        io::write_json(path("g1.json"), p);
        REQUIRE(run("swing --params " + path("g1.json") + " --out " + path("g1_sys.json")) == 0);
        const LtiSystem sys = io::system_from_json(io::read_json(path("g1_sys.json")));
        CHECK(std::abs(sys.A()(0, 0) - 1.0) < 1e-12);
        CHECK(std::abs(sys.A()(0, 1) - 0.2) < 1e-12);
        CHECK(std::abs(sys.A()(1, 0)) < 1e-12);
        CHECK(std::abs(sys.A()(1, 1) - 1.0) < 1e-12);
    }
    SUBCASE("invalid parameters") {
        io::Json p;
        p["inertia"] = {-1.0};
        p["damping"] = {0.0};
        p["coupling"] = {0.0};
        p["dt"] = 0.2;
        io::write_json(path("bad_params.json"), p);
        CHECK(run("swing --params " + path("bad_params.json") + " --out " + path("x.json")) == 1);
        CHECK(run("swing --out " + path("x.json")) == 1);
    }
}

TEST_CASE("sweep on the swing demo") {
    REQUIRE(run("swing --generators 10 --seed 42 --out " + path("demo.json")) == 0);
    const std::string args = "sweep --system " + path("demo.json") + " --t 20 --ds 1,2,4,8 --da 2,4,8 --out ";
    REQUIRE(run(args + path("grid1"), "GRAMSCHED_THREADS=1") == 0);
    REQUIRE(run(args + path("grid2"), "GRAMSCHED_THREADS=3") == 0);

    for (const char* f : {"epsilon.csv", "hankel_norm.csv", "log_error.csv", "cells.jsonl"})
        CHECK(slurp(path("grid1") + "/" + f) == slurp(path("grid2") + "/" + f));

    const auto eps = csv(path("grid1/epsilon.csv"));
    REQUIRE(eps.size() == 6);
    for (const auto& r : eps) CHECK(r.size() == 5);
    CHECK(eps[1][1].rfind("skip:", 0) == 0);  // d_s t = 20 = n
    CHECK(eps[5][4] == "0");
    CHECK(csv(path("grid1/log_error.csv"))[5][4] == "0");

    std::istringstream in(slurp(path("grid1/cells.jsonl")));
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        const auto j = io::Json::parse(line);
        if (j["skipped"].get<bool>()) continue;
        CHECK(j["report"]["sensors"]["pass"] == true);
        CHECK(j["report"]["actuators"]["pass"] == true);
        ++checked;
    }
    CHECK(checked == 16);  // 20 cells minus the d_s = 1 row

    SUBCASE("separation mode with normalization") {
        REQUIRE(run("sweep --system " + path("demo.json") + " --t 20 --ds 4 --da 4 --mode separation --normalize --out " +
                    path("grid3")) == 0);
        CHECK(fs::exists(path("grid3/epsilon_normalized.csv")));
        CHECK(csv(path("grid3/epsilon.csv"))[1][1].find('+') != std::string::npos);
    }
}
