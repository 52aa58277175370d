// Copyright 2026 The bellscan Authors
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
#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(BELLSCAN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string &args, int expected_code = 0) {
    const auto r = run(args);
    REQUIRE(r.code == expected_code);
    const auto j = json::parse(r.out);
    CHECK(j.at("schema_version") == 1);
    CHECK(j.contains("config"));
    return j;
}

} // namespace

TEST_CASE("correlate") {
    const auto j = run_json("correlate --spin 1 --observable quad_s1 --grid-points 50");
    CHECK(j["config"]["command"] == "correlate");
    CHECK(j["config"]["spin"] == "1");
    CHECK(j["result"]["closed_form"] == "quadratic");
    CHECK(j["result"]["max_abs_discrepancy"].get<double>() < 1e-10);
    CHECK(j["result"]["grid"].size() == 50);

    const auto lin = run_json("correlate --spin 1/2 --observable linear");
    for (const auto &row : lin["result"]["grid"]) {
        CHECK(std::abs(row["oracle"].get<double>() + std::cos(row["theta"].get<double>())) < 1e-10);
    }

    const auto quartic = run_json("correlate --observable quartic_s2");
    CHECK(quartic["result"]["closed_trusted"] == false);
    CHECK(quartic["result"]["warning"].is_string());
    CHECK(quartic["result"]["max_abs_discrepancy"].get<double>() > 1.0);

    const auto csv = run("correlate --spin 3/2 --observable quad_s32 --format csv --grid-points 3");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("theta,value,method,spec\n", 0) == 0);
    CHECK(csv.out.find(",closed,quad_s32") != std::string::npos);
}

TEST_CASE("scan") {
    const auto j = run_json("scan --spin 1 --observable quad_s1");
    CHECK(std::abs(j["result"]["b_max"].get<double>() - 2.55) < 0.01);
    CHECK(j["result"]["intervals_3theta"].size() == 2);
    CHECK(j["result"].contains("violation_fraction"));
    CHECK(j["result"]["grid"].size() == 1001);
    const auto s52 = run_json("scan --spin 5/2 --observable quad");
    CHECK(s52["result"]["b_max"].get<double>() <= 2.0);
    const auto coeffs = run_json("scan --spin 3/2 --coeffs=-1.25,0,2.25 --grid-points 500");
    CHECK(std::abs(coeffs["result"]["b_max"].get<double>() - 2.62) < 0.01);
}

TEST_CASE("search") {
    const auto j = run_json("search --spin 1 --degree 2 --grid-points 301");
    const auto best = j["result"]["best_coeffs"]["values"].get<std::vector<double>>();
    CHECK(best == std::vector<double>{-1.0, 0.0, 2.0});
    CHECK(j["result"]["record"].contains("violation_fraction"));
    const auto v = run_json("search --spin 2 --degree 3 --method vertex --parity odd");
    CHECK(std::abs(v["result"]["b_max"].get<double>() - 2.03) < 0.05);
    const auto csv = run("search --spin 1 --degree 2 --format csv --grid-points 201");
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("C0,C1,C2,b_max\n", 0) == 0);
}

TEST_CASE("simulate") {
    const auto a = run("simulate --spin 1 --theta 0.785398 --shots 20000 --seed 11");
    const auto b = run("simulate --spin 1 --theta 0.785398 --shots 20000 --seed 11");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(std::abs(j["result"]["z_score"].get<double>()) < 5);
    CHECK(j["result"]["counts"]["seed"] == 11);
    const auto exact = run_json("simulate --spin 1 --shots 0");
    CHECK(exact["result"]["mode"] == "exact");
    CHECK(std::abs(exact["result"]["deviation_from_oracle"].get<double>()) < 1e-10);
}

TEST_CASE("table1 and classical-limit") {
    const auto t = run_json("table1 --grid-points 501");
    CHECK(t["result"]["rows"].size() == 6);
    CHECK(t["result"]["rows"][0]["published_b_max"] == "2*sqrt(2)");
    const auto md = run("table1 --format md --grid-points 501");
    CHECK(md.code == 0);
    CHECK(md.out.find("| 2 | 4 | quartic_s2 |") != std::string::npos);
    const auto c = run_json("classical-limit --degree 2 --s-max 3 --grid-points 301");
    CHECK(c["result"]["last_violating_spin"] == "3/2");
    const auto c1 = run_json("classical-limit --degree 1 --s-max 3 --grid-points 301");
    CHECK(c1["result"]["last_violating_spin"] == "1/2");
}

TEST_CASE("argument errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("scan --spin 2/3 --observable linear").code == 2);
    CHECK(run("scan --spin 1 --coeffs 0,2").code == 2);
    CHECK(run("scan --spin 2 --observable quad_s1").code == 2);
    CHECK(run("search --spin 1 --degree 3").code == 2);
    CHECK(run("search --spin 1 --degree 2 --step 0").code == 2);
    CHECK(run("scan --observable linear --format md").code == 2);
    CHECK(run("scan --observable linear --grid-points 10").code == 2);
    CHECK(run("classical-limit").code == 2);
    CHECK(run("simulate --spin 1 --shards 0").code == 2);
    CHECK(run("correlate --spin 1 --coeffs 1,x").code == 2);
    CHECK(run("--help").code == 0);
}
