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

#include "qwalk/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "qwalk/assignment_io.hpp"
#include "qwalk/bounds.hpp"
#include "qwalk/generators.hpp"
#include "qwalk/graph_io.hpp"
#include "qwalk/stationary.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
            throw ConfigError(where + ": unknown key \"" + key + "\"");
        }
    }
}

std::uint64_t get_unsigned(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
    const json& v = j.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ConfigError(where + ": \"" + key + "\" must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::string get_string(const json& j, const char* key, const std::string& where) {
    if (!j.at(key).is_string()) throw ConfigError(where + ": \"" + key + "\" must be a string");
    return j.at(key).get<std::string>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

GraphSpec parse_graph(const json& j, const std::filesystem::path& base) {
    require_object(j, "graph");
    if (j.contains("edge_list") == j.contains("family")) {
        throw ConfigError("graph: exactly one of \"family\" or \"edge_list\" is required");
    }
    GraphSpec spec;
    if (j.contains("edge_list")) {
        reject_unknown_keys(j, {"edge_list"}, "graph");
        spec.edge_list = resolve(base, get_string(j, "edge_list", "graph"));
        return spec;
    }
    spec.family = get_string(j, "family", "graph");
    const std::string where = "graph (" + spec.family + ")";
    if (spec.family == "cycle" || spec.family == "path" || spec.family == "complete") {
        reject_unknown_keys(j, {"family", "n"}, where);
        spec.n = get_unsigned(j, "n", where);
    } else if (spec.family == "torus2d") {
        reject_unknown_keys(j, {"family", "rows", "cols"}, where);
        spec.rows = get_unsigned(j, "rows", where);
        spec.cols = get_unsigned(j, "cols", where);
    } else if (spec.family == "random_regular") {
        reject_unknown_keys(j, {"family", "n", "d", "seed"}, where);
        spec.n = get_unsigned(j, "n", where);
        spec.d = get_unsigned(j, "d", where);
        spec.seed = get_unsigned(j, "seed", where);
    } else {
        throw ConfigError("graph: unknown family \"" + spec.family + "\"");
    }
    return spec;
}

MarkedSpec parse_marked(const json& j) {
    require_object(j, "marked");
    reject_unknown_keys(j, {"vertices", "block", "pairs"}, "marked");
    if (j.size() != 1) throw ConfigError("marked: exactly one of \"vertices\", \"block\" or \"pairs\" is required");
    if (j.contains("vertices")) {
        const json& list = j.at("vertices");
        if (!list.is_array()) throw ConfigError("marked: \"vertices\" must be an array");
        std::vector<Vertex> out;
        for (const json& v : list) {
            if (!v.is_number_unsigned() || v.get<std::uint64_t>() > 0xffffffffULL) {
                throw ConfigError("marked: vertex ids must be nonnegative integers");
            }
            out.push_back(v.get<Vertex>());
        }
        return out;
    }
    if (j.contains("block")) {
        const json& b = j.at("block");
        require_object(b, "marked.block");
        reject_unknown_keys(b, {"rows", "cols", "row", "col"}, "marked.block");
        return BlockPattern{get_unsigned(b, "rows", "marked.block"), get_unsigned(b, "cols", "marked.block"),
                            get_unsigned(b, "row", "marked.block"), get_unsigned(b, "col", "marked.block")};
    }
    const json& p = j.at("pairs");
    require_object(p, "marked.pairs");
    reject_unknown_keys(p, {"k", "seed"}, "marked.pairs");
    return PairsPattern{get_unsigned(p, "k", "marked.pairs"), get_unsigned(p, "seed", "marked.pairs")};
}

json component_json(const MarkedComponent& comp, std::size_t id) {
    json edges = json::array();
    for (const Edge& e : comp.internal_edges) edges.push_back({e.u, e.v});
    json d_out = json::object();
    json d_in = json::object();
    for (std::size_t i = 0; i < comp.vertices.size(); ++i) {
        d_out[std::to_string(comp.vertices[i])] = comp.d_out[i];
        d_in[std::to_string(comp.vertices[i])] = comp.d_in[i];
    }
    json out = {
        {"id", id},
        {"vertices", comp.vertices},
        {"internal_edges", edges},
        {"d_in", d_in},
        {"d_out", d_out},
        {"total_out", comp.total_out},
        {"bipartite", comp.is_bipartite()},
        {"exists_stationary", exists_stationary(comp)},
    };
    out["bipartition"] = comp.bipartition ? json::array({comp.bipartition->first, comp.bipartition->second}) : json(nullptr);
    if (!exists_stationary(comp)) out["infeasibility"] = infeasibility_reason(comp);
    return out;
}

std::string describe_marked(const MarkedSpec& spec) {
    if (std::holds_alternative<BlockPattern>(spec)) return "block";
    if (std::holds_alternative<PairsPattern>(spec)) return "pairs";
    return "vertices";
}

} // namespace

std::filesystem::path ExperimentConfig::csv_output() const { return csv_path ? *csv_path : out_dir / (name + ".csv"); }

std::filesystem::path ExperimentConfig::json_output() const {
    return json_path ? *json_path : out_dir / (name + ".json");
}

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir, const std::string& default_name) {
    require_object(doc, "config");
    reject_unknown_keys(doc, {"name", "graph", "marked", "t_max", "assignment", "output"}, "config");
    if (!doc.contains("graph")) throw ConfigError("config: missing \"graph\"");
    if (!doc.contains("marked")) throw ConfigError("config: missing \"marked\"");

    ExperimentConfig config;
    config.name = doc.contains("name") ? get_string(doc, "name", "config") : default_name;
    if (config.name.empty() || config.name.find('/') != std::string::npos) {
        throw ConfigError("config: \"name\" must be a nonempty file-name-safe string");
    }
    config.graph = parse_graph(doc.at("graph"), base_dir);
    config.marked = parse_marked(doc.at("marked"));
    if (doc.contains("t_max")) config.t_max = get_unsigned(doc, "t_max", "config");

    if (doc.contains("assignment")) {
        const json& a = doc.at("assignment");
        if (a.is_string()) {
            if (a.get<std::string>() != "min_norm") throw ConfigError("assignment: expected \"min_norm\" or {\"file\": ...}");
        } else {
            require_object(a, "assignment");
            reject_unknown_keys(a, {"file"}, "assignment");
            if (!a.contains("file")) throw ConfigError("assignment: missing \"file\"");
            config.assignment_file = resolve(base_dir, get_string(a, "file", "assignment"));
        }
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        require_object(o, "output");
        reject_unknown_keys(o, {"dir", "csv", "json"}, "output");
        if (o.contains("dir")) config.out_dir = resolve(base_dir, get_string(o, "dir", "output"));
        if (o.contains("csv")) config.csv_path = resolve(base_dir, get_string(o, "csv", "output"));
        if (o.contains("json")) config.json_path = resolve(base_dir, get_string(o, "json", "output"));
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path(),
                        path.stem().string());
}

void apply_overrides(ExperimentConfig& config, const RunOverrides& overrides) {
    if (overrides.t_max) config.t_max = overrides.t_max;
    if (overrides.seed) {
        config.graph.seed = *overrides.seed;
        if (auto* pairs = std::get_if<PairsPattern>(&config.marked)) pairs->seed = *overrides.seed;
    }
    if (overrides.out_dir) {
        config.out_dir = *overrides.out_dir;
        config.csv_path.reset();
        config.json_path.reset();
    }
    if (overrides.assignment_file) config.assignment_file = overrides.assignment_file;
}

Graph make_graph(const GraphSpec& spec) {
    try {
        if (spec.edge_list) return read_edge_list(*spec.edge_list);
        if (spec.family == "cycle") return cycle(spec.n);
        if (spec.family == "path") return path(spec.n);
        if (spec.family == "torus2d") return torus2d(spec.rows, spec.cols);
        if (spec.family == "complete") return complete(spec.n);
        if (spec.family == "random_regular") return random_regular(spec.n, spec.d, spec.seed);
    } catch (const GraphError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("graph: unknown family \"" + spec.family + "\"");
}

std::vector<Vertex> block_vertices(std::size_t torus_rows, std::size_t torus_cols, const BlockPattern& block) {
    if (block.rows == 0 || block.cols == 0 || block.rows > torus_rows || block.cols > torus_cols) {
        throw ConfigError("marked.block: " + std::to_string(block.rows) + "x" + std::to_string(block.cols) +
                          " block does not fit a " + std::to_string(torus_rows) + "x" + std::to_string(torus_cols) +
                          " torus");
    }
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < block.rows; ++i) {
        for (std::size_t j = 0; j < block.cols; ++j) {
            out.push_back(torus_vertex(torus_rows, torus_cols, block.row + i, block.col + j));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Vertex> adjacent_pairs(const Graph& g, std::size_t k, std::uint64_t seed) {
    std::vector<Edge> edges = g.edges();
    std::mt19937_64 rng(seed);
    for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[uniform_below(rng, i)]);

    // A vertex is blocked once it is marked or adjacent to a marked vertex,
    // which keeps every chosen pair its own component.
    std::vector<bool> blocked(g.vertex_count(), false);
    std::vector<Vertex> out;
    for (const Edge& e : edges) {
        if (out.size() == 2 * k) break;
        if (blocked[e.u] || blocked[e.v]) continue;
        out.push_back(e.u);
        out.push_back(e.v);
        for (Vertex v : {e.u, e.v}) {
            blocked[v] = true;
            for (Vertex w : g.neighbors(v)) blocked[w] = true;
        }
    }
    if (out.size() != 2 * k) {
        throw ConfigError("marked.pairs: could only place " + std::to_string(out.size() / 2) + " of " +
                          std::to_string(k) + " separated pairs");
    }
    std::sort(out.begin(), out.end());
    return out;
}

MarkedSet make_marked(const Graph& g, const GraphSpec& graph, const MarkedSpec& marked) {
    try {
        if (const auto* list = std::get_if<std::vector<Vertex>>(&marked)) return MarkedSet(g, *list);
        if (const auto* block = std::get_if<BlockPattern>(&marked)) {
            if (graph.family != "torus2d") throw ConfigError("marked.block requires a torus2d graph");
            return MarkedSet(g, block_vertices(graph.rows, graph.cols, *block));
        }
        const auto& pairs = std::get<PairsPattern>(marked);
        return MarkedSet(g, adjacent_pairs(g, pairs.k, pairs.seed));
    } catch (const GraphError& e) {
        throw ConfigError(e.what());
    }
}

std::string format_csv_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

RunResult run_experiment(const ExperimentConfig& config) {
    RunResult result;
    result.summary.name = config.name;
    json& report = result.report;
    report["name"] = config.name;

    Graph g;
    MarkedSet marked;
    try {
        g = make_graph(config.graph);
        marked = make_marked(g, config.graph, config.marked);
        if (g.edge_count() == 0) throw ConfigError("graph has no edges");
    } catch (const ConfigError& e) {
        result.exit_code = kExitInputError;
        result.message = e.what();
        report["status"] = "input_error";
        report["error"] = result.message;
        return result;
    }
    const std::size_t t_max = config.t_max ? *config.t_max : default_t_max(g);

    result.summary.n = g.vertex_count();
    result.summary.m = g.edge_count();
    result.summary.marked = marked.size();
    report["graph"] = {{"family", config.graph.edge_list ? "edge_list" : config.graph.family},
                       {"n", g.vertex_count()},
                       {"m", g.edge_count()}};
    report["marked"] = {{"pattern", describe_marked(config.marked)},
                        {"vertices", std::vector<Vertex>(marked.vertices().begin(), marked.vertices().end())}};
    report["t_max"] = t_max;

    const auto components = marked_components(g, marked);
    json comps = json::array();
    for (std::size_t k = 0; k < components.size(); ++k) comps.push_back(component_json(components[k], k));
    report["components"] = comps;

    std::vector<StationaryAssignment> assignments;
    try {
        if (config.assignment_file) {
            assignments = assignments_from_file(g, components, read_assignment(*config.assignment_file));
        } else {
            for (const auto& comp : components) assignments.push_back(solve_min_norm(comp));
        }
    } catch (const InfeasibleStationaryError& e) {
        result.exit_code = kExitInfeasible;
        result.message = e.what();
        report["status"] = "infeasible";
        report["error"] = result.message;
        return result;
    } catch (const std::invalid_argument& e) {
        result.exit_code = kExitInputError;
        result.message = e.what();
        report["status"] = "input_error";
        report["error"] = result.message;
        return result;
    }

    const WalkState stationary = build_state(g, assignments);
    const StationarityReport check = verify_stationary(g, marked, stationary);
    double worst_constraint = 0.0;
    json coefficients = json::array();
    for (const auto& asg : assignments) {
        worst_constraint = std::max(worst_constraint, constraint_residual(asg.component, asg.coefficients));
        for (const auto& ec : asg.coefficients) coefficients.push_back({{"i", ec.edge.u}, {"j", ec.edge.v}, {"c", ec.c}});
    }
    report["assignment"] = {{"source", config.assignment_file ? "injected" : "min_norm"},
                            {"coefficients", coefficients},
                            {"a", global_scale(g, assignments)},
                            {"constraint_residual", worst_constraint}};
    json failures = check.failures();
    report["stationarity"] = {{"residual", check.residual},
                              {"unmarked_equal", check.unmarked_equal},
                              {"marked_sums_zero", check.marked_sums_zero},
                              {"reverse_pairs_equal", check.reverse_pairs_equal},
                              {"failures", failures},
                              {"probability", marked_probability(g, stationary, marked)},
                              {"overlap_with_initial", overlap(stationary, initial_state(g))}};

    const BoundReport bounds = total_bound(assignments, g.edge_count());
    json per_component = json::array();
    for (const auto& t : bounds.per_component) {
        per_component.push_back({{"component", t.component_id},
                                 {"sum_directed_c2", t.sum_directed_c2},
                                 {"total_out", t.total_out},
                                 {"internal_edges", t.internal_edges},
                                 {"term", t.term},
                                 {"source", to_string(t.source)}});
    }
    report["bounds"] = {{"per_component", per_component},
                        {"total_bound", bounds.total_bound},
                        {"m", bounds.m},
                        {"assignment_source", to_string(bounds.assignment_source)}};

    std::string csv = "t,p_marked\n";
    ProbabilityPeak peak;
    WalkState s = initial_state(g);
    try {
        evolve(g, s, marked, t_max, [&](std::size_t t, double p) {
            csv += std::to_string(t);
            csv += ',';
            csv += format_csv_double(p);
            csv += '\n';
            if (t == 0) peak.p0 = p;
            if (t == 0 || p > peak.max_p) {
                peak.max_p = p;
                peak.argmax_t = t;
            }
        });
    } catch (const NormDriftError& e) {
        result.exit_code = kExitCheckFailed;
        result.message = e.what();
        report["status"] = "norm_drift";
        report["error"] = result.message;
        return result;
    }
    result.csv = std::move(csv);

    const bool dominance = peak.max_p <= bounds.total_bound + kDominanceSlack;
    const bool residual_ok = check.residual <= kResidualTolerance && worst_constraint <= kResidualTolerance;
    report["observed"] = {{"p0", peak.p0}, {"max_p", peak.max_p}, {"argmax_t", peak.argmax_t}};
    report["dominance"] = dominance;
    report["margin"] = bounds.total_bound - peak.max_p;
    report["residual_ok"] = residual_ok;

    result.summary.bound = bounds.total_bound;
    result.summary.observed_max = peak.max_p;
    result.summary.margin = bounds.total_bound - peak.max_p;
    if (dominance && residual_ok) {
        report["status"] = "ok";
    } else {
        result.exit_code = kExitCheckFailed;
        result.message = dominance ? "stationary residual check failed" : "observed probability exceeds the bound";
        report["status"] = "check_failed";
        report["error"] = result.message;
    }
    result.summary.exit_code = result.exit_code;
    return result;
}

namespace {

int write_outputs(const ExperimentConfig& config, const RunResult& result, std::ostream& log) {
    try {
        for (const auto& p : {config.csv_output(), config.json_output()}) {
            if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        }
        if (!result.csv.empty()) {
            std::ofstream csv(config.csv_output(), std::ios::binary);
            csv << result.csv;
            if (!csv) throw ConfigError("cannot write " + config.csv_output().string());
        }
        std::ofstream js(config.json_output(), std::ios::binary);
        js << result.report.dump(2) << '\n';
        if (!js) throw ConfigError("cannot write " + config.json_output().string());
    } catch (const std::exception& e) {
        log << config.name << ": " << e.what() << '\n';
        return kExitInputError;
    }
    if (result.exit_code != kExitOk) log << config.name << ": " << result.message << '\n';
    return result.exit_code;
}

} // namespace

int run(const ExperimentConfig& config, std::ostream& log) { return write_outputs(config, run_experiment(config), log); }

SweepResult sweep(std::span<const ExperimentConfig> configs, std::size_t workers, bool write_outputs) {
    const auto write_outputs_for = [](const ExperimentConfig& c, const RunResult& r, std::ostream& log) {
        return qwalk::write_outputs(c, r, log);
    };
    SweepResult out;
    out.rows.resize(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < configs.size(); i = next.fetch_add(1)) {
            RunResult r = run_experiment(configs[i]);
            SummaryRow row = r.summary;
            row.exit_code = r.exit_code;
            if (write_outputs) {
                std::ostringstream log;
                row.exit_code = write_outputs_for(configs[i], r, log);
            }
            out.rows[i] = row;
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(workers, configs.size()));
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (const auto& row : out.rows) {
        if (row.exit_code != kExitOk) {
            out.exit_code = row.exit_code;
            break;
        }
    }
    return out;
}

void write_summary(std::ostream& out, std::span<const SummaryRow> rows) {
    out << "name,n,m,marked,bound,observed_max,margin,exit\n";
    for (const auto& r : rows) {
        out << r.name << ',' << r.n << ',' << r.m << ',' << r.marked << ',' << format_csv_double(r.bound) << ','
            << format_csv_double(r.observed_max) << ',' << format_csv_double(r.margin) << ',' << r.exit_code << '\n';
    }
}

std::size_t worker_count_from_env() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QWALK_THREADS")) {
        char* end = nullptr;
        const unsigned long long cap = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) return static_cast<std::size_t>(cap);
    }
    return hw;
}

} // namespace qwalk
