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
/**
 * @file
 * Declarative experiments: build a graph, mark vertices, solve for stationary
 * states, evaluate the probability bound, simulate the walk and report.
 *
 * A config is one JSON document; unknown keys are rejected at every level.
 *
 *     {
 *       "name": "five_cycle",
 *       "graph":  {"family": "cycle", "n": 5},          // or {"edge_list": "g.txt"}
 *       "marked": {"vertices": [3, 4]},                 // or {"block": {...}}, {"pairs": {...}}
 *       "t_max": 200,                                   // optional
 *       "assignment": "min_norm",                       // or {"file": "asg.txt"}
 *       "output": {"dir": "out", "csv": "...", "json": "..."}   // all optional
 *     }
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qwalk/graph.hpp"
#include "qwalk/marked.hpp"

namespace qwalk {

/// Invalid or inconsistent experiment input (exit status 1).
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct GraphSpec {
    std::string family;  // cycle | path | torus2d | complete | random_regular; empty with edge_list
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> edge_list;
};

/// rows x cols block of a torus with its top-left corner at (row, col).
struct BlockPattern {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t row = 0;
    std::size_t col = 0;
};

/// k adjacent marked pairs, pairwise non-adjacent, chosen with a seed.
struct PairsPattern {
    std::size_t k = 0;
    std::uint64_t seed = 0;
};

using MarkedSpec = std::variant<std::vector<Vertex>, BlockPattern, PairsPattern>;

struct ExperimentConfig {
    std::string name = "experiment";
    GraphSpec graph;
    MarkedSpec marked;
    std::optional<std::size_t> t_max;  // default_t_max() when absent
    std::optional<std::filesystem::path> assignment_file;  // min-norm when absent
    std::filesystem::path out_dir = ".";
    std::optional<std::filesystem::path> csv_path;
    std::optional<std::filesystem::path> json_path;

    [[nodiscard]] std::filesystem::path csv_output() const;
    [[nodiscard]] std::filesystem::path json_output() const;
};

/// Relative paths inside the document resolve against base_dir.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".",
                              const std::string& default_name = "experiment");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Command-line overrides; seed replaces every seed in the config.
struct RunOverrides {
    std::optional<std::size_t> t_max;
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::filesystem::path> assignment_file;
};

void apply_overrides(ExperimentConfig& config, const RunOverrides& overrides);

Graph make_graph(const GraphSpec& spec);
std::vector<Vertex> block_vertices(std::size_t torus_rows, std::size_t torus_cols, const BlockPattern& block);
std::vector<Vertex> adjacent_pairs(const Graph& g, std::size_t k, std::uint64_t seed);
MarkedSet make_marked(const Graph& g, const GraphSpec& graph, const MarkedSpec& marked);

/// Per-experiment exit statuses.
enum ExitStatus : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitInfeasible = 2,
    kExitCheckFailed = 3,
};

/// Slack allowed when comparing observed probability with the bound.
inline constexpr double kDominanceSlack = 1e-9;
/// Largest step residual accepted for an assembled stationary state.
inline constexpr double kResidualTolerance = 1e-10;

struct SummaryRow {
    std::string name;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t marked = 0;
    double bound = 0.0;
    double observed_max = 0.0;
    double margin = 0.0;
    int exit_code = kExitOk;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string message;
    nlohmann::json report;
    std::string csv;
    SummaryRow summary;
};

/// Runs the pipeline without touching the filesystem beyond reading inputs.
RunResult run_experiment(const ExperimentConfig& config);

/// Runs and writes the CSV and JSON outputs; returns the exit status.
int run(const ExperimentConfig& config, std::ostream& log);

struct SweepResult {
    std::vector<SummaryRow> rows;
    int exit_code = kExitOk;
};

/// Runs every config on up to `workers` threads. Rows keep input order; the
/// exit status is the first non-zero per-config status.
SweepResult sweep(std::span<const ExperimentConfig> configs, std::size_t workers, bool write_outputs);

void write_summary(std::ostream& out, std::span<const SummaryRow> rows);

/// Worker cap from QWALK_THREADS, else the hardware concurrency (at least 1).
std::size_t worker_count_from_env();

/// 17 significant digits.
std::string format_csv_double(double x);

} // namespace qwalk
