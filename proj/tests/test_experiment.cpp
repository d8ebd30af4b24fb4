// Copyright 2026 The qwalk Authors
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

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "qwalk/experiment.hpp"
#include "qwalk/generators.hpp"

using namespace qwalk;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
    fs::path path;
    explicit ScratchDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("qwalk_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig torus_block_config(std::size_t side, std::size_t t_max) {
    return parse_config(json{{"name", "block" + std::to_string(side)},
                             {"graph", {{"family", "torus2d"}, {"rows", side}, {"cols", side}}},
                             {"marked", {{"block", {{"rows", 2}, {"cols", 2}, {"row", 1}, {"col", 1}}}}},
                             {"t_max", t_max}});
}

} // namespace

TEST_CASE("parse_config accepts each marked pattern") {
    const auto c = parse_config(json::parse(R"({"graph": {"family": "cycle", "n": 5},
                                                "marked": {"vertices": [4, 3]}})"),
                                "/base", "five");
    CHECK(c.name == "five");
    CHECK(c.graph.family == "cycle");
    CHECK(std::get<std::vector<Vertex>>(c.marked) == std::vector<Vertex>{4, 3});
    CHECK_FALSE(c.t_max);
    CHECK(c.csv_output() == fs::path(".") / "five.csv");

    const auto b = torus_block_config(16, 10);
    const auto& block = std::get<BlockPattern>(b.marked);
    CHECK(block.rows == 2);
    CHECK(block.col == 1);
    CHECK(*b.t_max == 10);

    const auto p = parse_config(json::parse(R"({"name": "p", "graph": {"family": "random_regular", "n": 20, "d": 3, "seed": 4},
        "marked": {"pairs": {"k": 2, "seed": 9}}, "assignment": {"file": "a.txt"},
        "output": {"dir": "out", "json": "/abs/r.json"}})"),
                                "/base");
    CHECK(std::get<PairsPattern>(p.marked).k == 2);
    CHECK(*p.assignment_file == fs::path("/base/a.txt"));
    CHECK(p.csv_output() == fs::path("/base/out/p.csv"));
    CHECK(p.json_output() == fs::path("/abs/r.json"));

    const auto e = parse_config(json::parse(R"({"graph": {"edge_list": "g.txt"}, "marked": {"vertices": []}})"), "d");
    CHECK(*e.graph.edge_list == fs::path("d/g.txt"));
}

TEST_CASE("parse_config is strict") {
    const auto bad = [](const char* text) { return parse_config(json::parse(text)); };
    CHECK_THROWS_WITH_AS(bad(R"({"graph": {"family": "cycle", "n": 5}, "marked": {"vertices": [1]}, "tmax": 3})"),
                         doctest::Contains("unknown key \"tmax\""), ConfigError);
    CHECK_THROWS_WITH_AS(bad(R"({"graph": {"family": "cycle", "n": 5, "rows": 2}, "marked": {"vertices": [1]}})"),
                         doctest::Contains("unknown key \"rows\""), ConfigError);
    CHECK_THROWS_WITH_AS(bad(R"({"graph": {"family": "hypercube", "n": 5}, "marked": {"vertices": [1]}})"),
                         doctest::Contains("unknown family"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"graph": {"family": "cycle", "n": -5}, "marked": {"vertices": [1]}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"graph": {"family": "cycle", "n": 5}, "marked": {"vertices": [1.5]}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"graph": {"family": "cycle", "n": 5}, "marked": {}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"graph": {"family": "cycle", "n": 5}, "marked": {"vertices": [1], "pairs": {"k": 1, "seed": 1}}})"),
                    ConfigError);
    CHECK_THROWS_AS(bad(R"({"graph": {"family": "cycle", "n": 5, "edge_list": "x"}, "marked": {"vertices": [1]}})"),
                    ConfigError);
    CHECK_THROWS_AS(bad(R"({"marked": {"vertices": [1]}})"), ConfigError);
    CHECK_THROWS_AS(bad(R"({"graph": {"family": "cycle", "n": 5}, "marked": {"vertices": [1]}, "assignment": "max"})"),
                    ConfigError);
    CHECK_THROWS_AS(bad(R"({"name": "a/b", "graph": {"family": "cycle", "n": 5}, "marked": {"vertices": [1]}})"),
                    ConfigError);
    CHECK_THROWS_AS(bad(R"([1, 2])"), ConfigError);
}

TEST_CASE("run_experiment: five-cycle with an adjacent pair") {
    auto config = parse_config(json::parse(R"({"name": "c5", "graph": {"family": "cycle", "n": 5},
                                               "marked": {"vertices": [3, 4]}, "t_max": 50})"));
    const RunResult r = run_experiment(config);
    REQUIRE(r.exit_code == kExitOk);
    const json& rep = r.report;
    CHECK(rep["status"] == "ok");
    CHECK(rep["components"].size() == 1);
    CHECK(rep["components"][0]["exists_stationary"] == true);
    CHECK(rep["assignment"]["coefficients"][0]["c"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rep["assignment"]["a"].get<double>() == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-14));
    CHECK(rep["stationarity"]["residual"].get<double>() <= 1e-12);
    CHECK(rep["stationarity"]["probability"].get<double>() == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(rep["bounds"]["total_bound"].get<double>() == doctest::Approx(3.2).epsilon(1e-14));
    CHECK(rep["observed"]["p0"].get<double>() == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(rep["dominance"] == true);

    std::istringstream csv(r.csv);
    std::string line;
    std::getline(csv, line);
    CHECK(line == "t,p_marked");
    std::size_t rows = 0;
    while (std::getline(csv, line)) {
        CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
        ++rows;
    }
    CHECK(rows == 51);

    CHECK(r.summary.n == 5);
    CHECK(r.summary.m == 5);
    CHECK(r.summary.marked == 2);
}

TEST_CASE("run_experiment: 2x2 block on the 16x16 lattice") {
    const RunResult r = run_experiment(torus_block_config(16, 5000));
    REQUIRE(r.exit_code == kExitOk);
    const double bound = r.report["bounds"]["total_bound"].get<double>();
    CHECK(bound == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(r.report["observed"]["max_p"].get<double>() <= bound);
    CHECK(r.report["margin"].get<double>() > 0.0);
    CHECK(r.report["marked"]["vertices"] == json::array({17, 18, 33, 34}));
}

TEST_CASE("run_experiment: infeasible and malformed inputs") {
    const auto endpoint = parse_config(json::parse(R"({"name": "p", "graph": {"family": "path", "n": 4},
                                                       "marked": {"vertices": [0]}, "t_max": 5})"));
    const RunResult r = run_experiment(endpoint);
    CHECK(r.exit_code == kExitInfeasible);
    CHECK(r.report["status"] == "infeasible");
    CHECK(r.message == "no stationary state: bipartite sums 1 != 0");
    CHECK(r.report["components"][0]["infeasibility"] == "bipartite sums 1 != 0");

    const auto outside = parse_config(json::parse(R"({"graph": {"family": "cycle", "n": 5}, "marked": {"vertices": [9]}})"));
    CHECK(run_experiment(outside).exit_code == kExitInputError);

    const auto block_on_cycle = parse_config(json::parse(
        R"({"graph": {"family": "cycle", "n": 5}, "marked": {"block": {"rows": 2, "cols": 2, "row": 0, "col": 0}}})"));
    const RunResult b = run_experiment(block_on_cycle);
    CHECK(b.exit_code == kExitInputError);
    CHECK(b.message.find("torus2d") != std::string::npos);

    const auto missing = parse_config(json::parse(R"({"graph": {"edge_list": "/nonexistent/g.txt"}, "marked": {"vertices": []}})"));
    CHECK(run_experiment(missing).exit_code == kExitInputError);
}

TEST_CASE("run_experiment: injected assignment file") {
    ScratchDir dir("inject");
    {
        std::ofstream asg(dir.path / "asg.txt");
        asg << "17 33 -3\n18 34 -3\n17 18 1\n33 34 1\n";
    }
    auto config = torus_block_config(16, 3000);
    config.assignment_file = dir.path / "asg.txt";
    const RunResult r = run_experiment(config);
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.report["assignment"]["source"] == "injected");
    CHECK(r.report["bounds"]["total_bound"].get<double>() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.report["stationarity"]["probability"].get<double>() == doctest::Approx(12.0 / 264.0).epsilon(1e-12));

    {
        std::ofstream asg(dir.path / "bad.txt");
        asg << "17 33 -2\n18 34 -3\n17 18 1\n33 34 1\n";
    }
    config.assignment_file = dir.path / "bad.txt";
    CHECK(run_experiment(config).exit_code == kExitInputError);
}

TEST_CASE("run writes byte-identical outputs across repeated runs") {
    ScratchDir dir("det");
    auto config = parse_config(json::parse(R"({"name": "rr", "graph": {"family": "random_regular", "n": 40, "d": 4, "seed": 3},
        "marked": {"pairs": {"k": 2, "seed": 8}}, "t_max": 300})"));
    config.out_dir = dir.path / "a";
    std::ostringstream log;
    REQUIRE(run(config, log) == kExitOk);
    config.out_dir = dir.path / "b";
    REQUIRE(run(config, log) == kExitOk);
    CHECK(log.str().empty());
    const std::string csv = slurp(dir.path / "a" / "rr.csv");
    CHECK(csv == slurp(dir.path / "b" / "rr.csv"));
    CHECK(slurp(dir.path / "a" / "rr.json") == slurp(dir.path / "b" / "rr.json"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 302);
    const json rep = json::parse(slurp(dir.path / "a" / "rr.json"));
    CHECK(rep["bounds"]["total_bound"].get<double>() == doctest::Approx(2 * 4.0 * 16.0 / 80.0).epsilon(1e-13));
}

TEST_CASE("apply_overrides") {
    auto config = parse_config(json::parse(R"({"graph": {"family": "random_regular", "n": 40, "d": 4, "seed": 3},
        "marked": {"pairs": {"k": 2, "seed": 8}}, "t_max": 300, "output": {"csv": "x.csv"}})"));
    RunOverrides o;
    o.t_max = 7;
    o.seed = 99;
    o.out_dir = "elsewhere";
    apply_overrides(config, o);
    CHECK(*config.t_max == 7);
    CHECK(config.graph.seed == 99);
    CHECK(std::get<PairsPattern>(config.marked).seed == 99);
    CHECK(config.csv_output() == fs::path("elsewhere") / "experiment.csv");
}

TEST_CASE("marked-set builders") {
    CHECK(block_vertices(4, 4, BlockPattern{2, 2, 1, 1}) == std::vector<Vertex>{5, 6, 9, 10});
    // wraps around the corner
    CHECK(block_vertices(4, 4, BlockPattern{2, 2, 3, 3}) == std::vector<Vertex>{0, 3, 12, 15});
    CHECK_THROWS_AS(block_vertices(4, 4, BlockPattern{5, 1, 0, 0}), ConfigError);

    const Graph g = torus2d(16, 16);
    const auto pairs = adjacent_pairs(g, 5, 1);
    CHECK(pairs == adjacent_pairs(g, 5, 1));
    const auto comps = marked_components(g, MarkedSet(g, pairs));
    REQUIRE(comps.size() == 5);
    for (const auto& c : comps) CHECK(c.internal_edges.size() == 1);
    CHECK_THROWS_WITH_AS(adjacent_pairs(cycle(6), 3, 1), doctest::Contains("could only place"), ConfigError);
}

TEST_CASE("sweep") {
    SUBCASE("empty list") {
        const SweepResult r = sweep({}, 4, false);
        CHECK(r.rows.empty());
        CHECK(r.exit_code == kExitOk);
        std::ostringstream out;
        write_summary(out, r.rows);
        CHECK(out.str() == "name,n,m,marked,bound,observed_max,margin,exit\n");
    }
    SUBCASE("block bounds scale as 32/N") {
        std::vector<ExperimentConfig> configs{torus_block_config(8, 200), torus_block_config(16, 200),
                                              torus_block_config(32, 200)};
        const SweepResult r = sweep(configs, 3, false);
        REQUIRE(r.exit_code == kExitOk);
        REQUIRE(r.rows.size() == 3);
        CHECK(r.rows[0].bound == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r.rows[1].bound == doctest::Approx(0.125).epsilon(1e-14));
        CHECK(r.rows[2].bound == doctest::Approx(0.03125).epsilon(1e-14));
        CHECK(r.rows[1].name == "block16");
        for (const auto& row : r.rows) CHECK(row.observed_max <= row.bound);
    }
    SUBCASE("pair bounds grow linearly in the number of pairs") {
        std::vector<ExperimentConfig> configs;
        for (std::size_t k : {1, 2, 4}) {
            configs.push_back(parse_config(json{{"name", "k" + std::to_string(k)},
                                                {"graph", {{"family", "torus2d"}, {"rows", 16}, {"cols", 16}}},
                                                {"marked", {{"pairs", {{"k", k}, {"seed", 2}}}}},
                                                {"t_max", 100}}));
        }
        const SweepResult r = sweep(configs, 2, false);
        REQUIRE(r.exit_code == kExitOk);
        CHECK(r.rows[1].bound == doctest::Approx(2.0 * r.rows[0].bound).epsilon(1e-14));
        CHECK(r.rows[2].bound == doctest::Approx(4.0 * r.rows[0].bound).epsilon(1e-14));
    }
    SUBCASE("a failing entry sets the sweep exit code") {
        std::vector<ExperimentConfig> configs{torus_block_config(8, 20),
                                              parse_config(json::parse(R"({"name": "bad", "graph": {"family": "path", "n": 4},
                                                                         "marked": {"vertices": [0]}})"))};
        const SweepResult r = sweep(configs, 1, false);
        CHECK(r.exit_code == kExitInfeasible);
        CHECK(r.rows[1].exit_code == kExitInfeasible);
        CHECK(r.rows[0].exit_code == kExitOk);
    }
}

TEST_CASE("format_csv_double round-trips") {
    for (double x : {0.0, 0.1, 1.0 / 3.0, 1e-300, 0.125}) CHECK(std::stod(format_csv_double(x)) == x);
}
