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

#include "qwalk/assignment_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qwalk/snapshot.hpp"

namespace qwalk {

namespace {

double parse_double(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || token.empty()) {
        throw std::invalid_argument("assignment line " + std::to_string(line_no) + ": bad number \"" + token + "\"");
    }
    return x;
}

} // namespace

void write_assignment(std::ostream& out, const Graph& g, std::span<const StationaryAssignment> assignments) {
    for (const auto& asg : assignments) {
        for (const auto& ec : asg.coefficients) {
            out << ec.edge.u << ' ' << ec.edge.v << ' ' << format_amplitude(ec.c) << '\n';
        }
    }
    out << "a " << format_amplitude(global_scale(g, assignments)) << '\n';
}

AssignmentFile read_assignment(std::istream& in) {
    AssignmentFile file;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        if (tokens.empty()) continue;
        if (file.scale_a) {
            throw std::invalid_argument("assignment line " + std::to_string(line_no) + ": content after the \"a\" line");
        }
        if (tokens.size() == 2 && tokens[0] == "a") {
            file.scale_a = parse_double(tokens[1], line_no);
            continue;
        }
        if (tokens.size() != 3) {
            throw std::invalid_argument("assignment line " + std::to_string(line_no) + ": expected \"i j c\"");
        }
        const double i = parse_double(tokens[0], line_no);
        const double j = parse_double(tokens[1], line_no);
        if (i < 0 || j < 0 || i != std::floor(i) || j != std::floor(j) || i > 4294967295.0 || j > 4294967295.0) {
            throw std::invalid_argument("assignment line " + std::to_string(line_no) + ": bad vertex id");
        }
        file.coefficients.push_back(
            {Edge(static_cast<Vertex>(i), static_cast<Vertex>(j)), parse_double(tokens[2], line_no)});
    }
    return file;
}

AssignmentFile read_assignment(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open assignment file " + path.string());
    return read_assignment(in);
}

std::vector<StationaryAssignment> assignments_from_file(const Graph& g, std::span<const MarkedComponent> components,
                                                        const AssignmentFile& file) {
    std::vector<std::vector<EdgeCoefficient>> per_component(components.size());
    for (const auto& ec : file.coefficients) {
        bool placed = false;
        for (std::size_t k = 0; k < components.size() && !placed; ++k) {
            if (components[k].contains(ec.edge.u) && components[k].contains(ec.edge.v)) {
                per_component[k].push_back(ec);
                placed = true;
            }
        }
        if (!placed) {
            throw std::invalid_argument("assignment edge " + to_string(ec.edge) + " joins no marked component");
        }
    }
    std::vector<StationaryAssignment> out;
    out.reserve(components.size());
    for (std::size_t k = 0; k < components.size(); ++k) out.push_back(inject_assignment(components[k], per_component[k]));

    if (file.scale_a) {
        const double expected = global_scale(g, out);
        if (std::abs(*file.scale_a - expected) > 1e-12 * expected) {
            throw std::invalid_argument("assignment scale a=" + format_amplitude(*file.scale_a) +
                                        " does not normalize the state (expected " + format_amplitude(expected) + ")");
        }
    }
    return out;
}

} // namespace qwalk
