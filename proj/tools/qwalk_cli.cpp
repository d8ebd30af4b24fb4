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

// qwalk: command-line front end.
//
//   qwalk run <config.json>            [--t-max N] [--seed S] [--out-dir D] [--assignment F]
//   qwalk sweep <dir-or-list>          [--t-max N] [--seed S] [--out-dir D]
//   qwalk solve <graph> <marked>       [--snapshot F]
//   qwalk verify <graph> <marked> <snapshot>
//
// <graph> is an edge-list file; <marked> is either a comma-separated list of
// vertex ids or a file of whitespace-separated ids.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwalk/assignment_io.hpp"
#include "qwalk/experiment.hpp"
#include "qwalk/graph_io.hpp"
#include "qwalk/marked.hpp"
#include "qwalk/snapshot.hpp"
#include "qwalk/stationary.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<qwalk::Vertex> parse_marked_arg(const std::string& arg) {
    std::string text;
    if (fs::is_regular_file(arg)) {
        std::ifstream in(arg);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    } else {
        text = arg;
    }
    std::replace(text.begin(), text.end(), ',', ' ');
    std::istringstream in(text);
    std::vector<qwalk::Vertex> out;
    for (std::string tok; in >> tok;) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok[0] == '-') throw qwalk::ConfigError("bad marked vertex id \"" + tok + "\"");
        out.push_back(static_cast<qwalk::Vertex>(v));
    }
    return out;
}

std::vector<qwalk::ExperimentConfig> load_sweep(const fs::path& source) {
    std::vector<qwalk::ExperimentConfig> configs;
    if (fs::is_directory(source)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(source)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) configs.push_back(qwalk::load_config(f));
        return configs;
    }
    // A JSON array of configs, or a text list of config paths.
    std::ifstream in(source);
    if (!in) throw qwalk::ConfigError("cannot open sweep list " + source.string());
    const fs::path base = source.parent_path().empty() ? fs::path(".") : source.parent_path();
    if (source.extension() == ".json") {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw qwalk::ConfigError("sweep list " + source.string() + ": " + e.what());
        }
        if (!doc.is_array()) throw qwalk::ConfigError("sweep list must be a JSON array of configs");
        for (std::size_t i = 0; i < doc.size(); ++i) {
            configs.push_back(qwalk::parse_config(doc[i], base, source.stem().string() + "_" + std::to_string(i)));
        }
        return configs;
    }
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        const fs::path p(line);
        configs.push_back(qwalk::load_config(p.is_absolute() ? p : base / p));
    }
    return configs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coined quantum walk search: stationary states and marked-probability bounds"};
    app.require_subcommand(1);

    qwalk::RunOverrides overrides;
    std::size_t t_max = 0;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string assignment;

    auto add_run_flags = [&](CLI::App* cmd, bool with_assignment) {
        cmd->add_option("--t-max", t_max, "Number of walk steps to simulate");
        cmd->add_option("--seed", seed, "Override every seed in the config");
        cmd->add_option("--out-dir", out_dir, "Directory for CSV and JSON outputs");
        if (with_assignment) cmd->add_option("--assignment", assignment, "Assignment file instead of min-norm");
    };

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run one experiment config");
    run_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
    add_run_flags(run_cmd, true);

    std::string sweep_source;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a directory or list of configs");
    sweep_cmd->add_option("source", sweep_source, "Directory of *.json configs, JSON array, or text list")->required();
    add_run_flags(sweep_cmd, false);

    std::string graph_path;
    std::string marked_arg;
    std::string snapshot_path;
    auto* solve_cmd = app.add_subcommand("solve", "Print the min-norm stationary assignment");
    solve_cmd->add_option("graph", graph_path, "Edge-list file")->required();
    solve_cmd->add_option("marked", marked_arg, "Marked vertices: \"3,4\" or a file")->required();
    solve_cmd->add_option("--snapshot", snapshot_path, "Also write the stationary state snapshot here");

    std::string verify_graph;
    std::string verify_marked;
    std::string verify_snapshot;
    auto* verify_cmd = app.add_subcommand("verify", "Print the stationarity residual of a state snapshot");
    verify_cmd->add_option("graph", verify_graph, "Edge-list file")->required();
    verify_cmd->add_option("marked", verify_marked, "Marked vertices: \"3,4\" or a file")->required();
    verify_cmd->add_option("snapshot", verify_snapshot, "State snapshot file")->required();

    CLI11_PARSE(app, argc, argv);

    auto collect_overrides = [&](CLI::App* cmd) {
        if (cmd->count("--t-max")) overrides.t_max = t_max;
        if (cmd->count("--seed")) overrides.seed = seed;
        if (cmd->count("--out-dir")) overrides.out_dir = out_dir;
        if (!assignment.empty()) overrides.assignment_file = assignment;
    };

    try {
        if (run_cmd->parsed()) {
            collect_overrides(run_cmd);
            auto config = qwalk::load_config(config_path);
            qwalk::apply_overrides(config, overrides);
            const int status = qwalk::run(config, std::cerr);
            std::cout << config.json_output().string() << '\n';
            return status;
        }
        if (sweep_cmd->parsed()) {
            collect_overrides(sweep_cmd);
            auto configs = load_sweep(sweep_source);
            for (auto& c : configs) qwalk::apply_overrides(c, overrides);
            const auto result = qwalk::sweep(configs, qwalk::worker_count_from_env(), true);
            qwalk::write_summary(std::cout, result.rows);
            return result.exit_code;
        }
        if (solve_cmd->parsed()) {
            const auto g = qwalk::read_edge_list(fs::path(graph_path));
            const qwalk::MarkedSet marked(g, parse_marked_arg(marked_arg));
            std::vector<qwalk::StationaryAssignment> assignments;
            for (const auto& comp : qwalk::marked_components(g, marked)) {
                assignments.push_back(qwalk::solve_min_norm(comp));
            }
            qwalk::write_assignment(std::cout, g, assignments);
            if (!snapshot_path.empty()) {
                std::ofstream out(snapshot_path);
                qwalk::write_snapshot(out, g, qwalk::build_state(g, assignments));
                if (!out) throw qwalk::ConfigError("cannot write " + snapshot_path);
            }
            return qwalk::kExitOk;
        }
        if (verify_cmd->parsed()) {
            const auto g = qwalk::read_edge_list(fs::path(verify_graph));
            const qwalk::MarkedSet marked(g, parse_marked_arg(verify_marked));
            const auto state = qwalk::read_snapshot(fs::path(verify_snapshot), g);
            const auto report = qwalk::verify_stationary(g, marked, state);
            std::cout << "residual " << qwalk::format_amplitude(report.residual) << '\n';
            for (const auto& failure : report.failures()) std::cout << "failed: " << failure << '\n';
            return qwalk::kExitOk;
        }
    } catch (const qwalk::InfeasibleStationaryError& e) {
        std::cerr << e.what() << '\n';
        return qwalk::kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qwalk::kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qwalk::kExitInputError;
    }
    return qwalk::kExitOk;
}
