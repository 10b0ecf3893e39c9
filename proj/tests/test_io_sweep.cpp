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
#include "gramsched/io.hpp"
#include "gramsched/scheduler.hpp"
#include "gramsched/sweep.hpp"

#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace gramsched;
namespace fs = std::filesystem;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("system JSON round trip") {
    const LtiSystem sys = swing_system(random_swing_params(3, 4));
    const io::Json j = io::system_to_json(sys);
    CHECK(j["n"] == 6);
    CHECK(j["m"] == 3);
    CHECK(j["p"] == 6);
    CHECK(j["A"].size() == 36);
    CHECK(j["A"][1].get<double>() == sys.A()(0, 1));  // row-major
    const LtiSystem back = io::system_from_json(io::Json::parse(j.dump()));
    CHECK(back.A() == sys.A());
    CHECK(back.B() == sys.B());
    CHECK(back.C() == sys.C());
    CHECK(back.labels().outputs == sys.labels().outputs);

    io::Json bad = j;
    bad["A"].erase(0);
    CHECK_THROWS_AS(io::system_from_json(bad), InvalidArgument);
    bad = j;
    bad.erase("B");
    CHECK_THROWS_AS(io::system_from_json(bad), InvalidArgument);
    bad = j;
    bad["n"] = "six";
    CHECK_THROWS_AS(io::system_from_json(bad), InvalidArgument);
}

TEST_CASE("swing parameter JSON round trip") {
    const SwingParams p = random_swing_params(4, 2);
    const SwingParams back = io::swing_params_from_json(io::Json::parse(io::swing_params_to_json(p).dump()));
    CHECK(back.inertia == p.inertia);
    CHECK(back.damping == p.damping);
    CHECK(back.coupling == p.coupling);
    CHECK(back.dt == p.dt);

    io::Json bad = io::swing_params_to_json(p);
    bad["coupling"][1] = 5.0;  // breaks symmetry / row sums
    CHECK_THROWS_AS(io::swing_params_from_json(bad), InvalidArgument);
}

TEST_CASE("schedule JSON round trip is lossless") {
    const LtiSystem sys = random_system(4, 3, 3, 81);
    for (const Schedule& s : {joint_schedule(sys, 12, 1.0, 1.3), separation_schedule(sys, 12, 1.2, 1.0),
                              Schedule::full(5, 2, 3)}) {
        const io::Json j = io::schedule_to_json(s);
        const Schedule back = io::schedule_from_json(io::Json::parse(j.dump()));
        CHECK(back == s);  // bitwise on scalings
    }
    const Schedule s = joint_schedule(sys, 12, 1.0, 1.0);
    const io::Json j = io::schedule_to_json(s);
    CHECK(j["provenance"] == "joint");
    CHECK(j["budgets"]["ds"] == 1.0);
    // Sorted by (k, i).
    const auto& act = j["actuators"];
    for (std::size_t e = 1; e < act.size(); ++e) {
        const auto a = std::make_pair(act[e - 1]["k"].get<int>(), act[e - 1]["i"].get<int>());
        const auto b = std::make_pair(act[e]["k"].get<int>(), act[e]["i"].get<int>());
        CHECK(a < b);
    }

    io::Json bad = j;
    bad["actuators"][0]["i"] = 7;
    CHECK_THROWS_AS(io::schedule_from_json(bad), InvalidArgument);
    bad = j;
    bad["provenance"] = "nonsense";
    CHECK_THROWS_AS(io::schedule_from_json(bad), InvalidArgument);
}

TEST_CASE("report JSON") {
    const LtiSystem sys = random_system(4, 3, 3, 82);
    const auto rep = verify_schedule(sys, joint_schedule(sys, 12, 1.0, 1.0));
    const io::Json j = io::report_to_json(rep);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    const std::vector<std::string> expected{"provenance", "t",      "n",       "sensors",  "actuators",
                                            "joint",      "hankel", "metrics", "certified"};
    CHECK(keys == expected);
    CHECK(j["joint"]["epsilon_empirical"].get<double>() == rep.joint_epsilon);
    CHECK(j["certified"] == rep.certified());

    CHECK(io::number(INFINITY) == "inf");
    CHECK(io::number(-INFINITY) == "-inf");
    CHECK(io::number(std::nan("")) == "nan");
    CHECK(io::number(1.5) == 1.5);
    CHECK(io::format_number(1.63682701) == "1.63683");
    CHECK(io::format_number(INFINITY) == "inf");
    CHECK(io::format_number(0.0) == "0");
}

TEST_CASE("file helpers") {
    const fs::path dir = fs::temp_directory_path() / "gramsched_io_test";
    fs::create_directories(dir);
    const io::Json j = {{"a", 1}, {"b", {1, 2}}};
    io::write_json(dir / "x.json", j);
    CHECK(io::read_json(dir / "x.json") == j);
    CHECK_THROWS_AS(io::read_json(dir / "missing.json"), InvalidArgument);
    {
        std::ofstream(dir / "broken.json") << "{ nope";
    }
    CHECK_THROWS_AS(io::read_json(dir / "broken.json"), InvalidArgument);
    fs::remove_all(dir);
}

TEST_CASE("sweep grid") {
    const LtiSystem sys = random_system(4, 3, 3, 91);
    SweepSpec spec;
    spec.t = 12;
    spec.sensor_budgets = {0.25, 1.0, 1.5, 2.0};  // 0.25*12 = 3 <= n: skipped
    spec.actuator_budgets = {1.0, 1.5, 2.0};
    spec.threads = 1;
    const SweepResult res = run_sweep(sys, spec);
    REQUIRE(res.rows == 5);
    REQUIRE(res.cols == 4);

    SUBCASE("shape with margins") {
        const auto rows = parse_csv(res.epsilon_csv());
        REQUIRE(rows.size() == 6);  // header + 5
        for (const auto& r : rows) CHECK(r.size() == 5);  // label + 4
        CHECK(rows[0][0] == "d_s\\d_a");
        CHECK(rows[0][4] == "full");
        CHECK(rows[5][0] == "full");
    }
    SUBCASE("infeasible row is skipped, run continues") {
        for (std::size_t c = 0; c + 1 < res.cols; ++c) {
            CHECK(res.at(0, c).skipped);
            CHECK(res.at(0, c).skip_reason.find("sensor") != std::string::npos);
        }
        CHECK(parse_csv(res.epsilon_csv())[1][1].rfind("skip:", 0) == 0);
    }
    SUBCASE("non-skipped cells are certified, corner is zero") {
        for (const auto& cell : res.cells) {
            if (cell.skipped) continue;
            REQUIRE(cell.report.has_value());
            CHECK(cell.report->sensors.pass);
            CHECK(cell.report->actuators.pass);
        }
        const SweepCell& corner = res.at(4, 3);
        REQUIRE_FALSE(corner.skipped);
        CHECK(corner.epsilon() == 0.0);
        CHECK(corner.report->hankel_log_error == 0.0);
        CHECK(parse_csv(res.log_error_csv())[5][4] == "0");
        CHECK(parse_csv(res.epsilon_csv())[5][4] == "0");
    }
    SUBCASE("margins are single-sided") {
        CHECK(res.at(4, 0).report->provenance == Provenance::ActuatorOnly);
        CHECK(res.at(1, 3).report->provenance == Provenance::SensorOnly);
        CHECK(res.at(1, 3).epsilon() == res.at(1, 3).report->sensors.epsilon_empirical);
    }
    SUBCASE("deterministic across thread counts") {
        SweepSpec parallel = spec;
        parallel.threads = 4;
        const SweepResult again = run_sweep(sys, parallel);
        CHECK(again.epsilon_csv() == res.epsilon_csv());
        CHECK(again.hankel_norm_csv() == res.hankel_norm_csv());
        CHECK(again.log_error_csv() == res.log_error_csv());
    }
}

TEST_CASE("sweep modes") {
    const LtiSystem sys = random_system(4, 3, 3, 92);
    SweepSpec spec;
    spec.t = 12;
    spec.sensor_budgets = {1.0, 2.0};
    spec.actuator_budgets = {1.0};
    spec.threads = 2;

    SUBCASE("separation cells carry the decomposition") {
        spec.mode = SweepMode::Separation;
        const SweepResult res = run_sweep(sys, spec);
        const SweepCell& c = res.at(0, 0);
        REQUIRE(c.separation_sensor_epsilon.has_value());
        const auto rows = parse_csv(res.epsilon_csv());
        CHECK(rows[1][1].find(" (") != std::string::npos);
        CHECK(rows[1][1].find('+') != std::string::npos);
    }
    SUBCASE("sensor mode skips the interior") {
        spec.mode = SweepMode::Sensor;
        const SweepResult res = run_sweep(sys, spec);
        CHECK(res.at(0, 0).skipped);
        CHECK_FALSE(res.at(0, 1).skipped);
        CHECK(res.at(2, 0).skipped);
    }
    SUBCASE("normalization grid") {
        spec.normalize = true;
        const SweepResult res = run_sweep(sys, spec);
        REQUIRE(res.at(0, 0).report->normalized.has_value());
        const auto rows = parse_csv(res.normalized_epsilon_csv());
        CHECK(rows.size() == 4);
    }
    SUBCASE("mode names") {
        for (auto m : {SweepMode::Joint, SweepMode::Separation, SweepMode::Sensor, SweepMode::Actuator})
            CHECK(sweep_mode_from_string(to_string(m)) == m);
        CHECK_THROWS_AS(sweep_mode_from_string("both"), InvalidArgument);
    }
    SUBCASE("bad specs") {
        spec.t = 2;
        CHECK_THROWS_AS(run_sweep(sys, spec), InvalidArgument);
        spec.t = 12;
        spec.sensor_budgets = {-1.0};
        CHECK_THROWS_AS(run_sweep(sys, spec), InvalidArgument);
    }
}
