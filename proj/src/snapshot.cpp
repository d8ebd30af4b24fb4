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

#include "qwalk/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace qwalk {

std::string format_amplitude(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_snapshot(std::ostream& out, const Graph& g, const WalkState& s) {
    s.check_graph(g);
    for (ArcIndex a = 0; a < g.arc_count(); ++a) {
        out << g.tail(a) << ' ' << g.port(a) << ' ' << format_amplitude(s[a]) << '\n';
    }
}

WalkState read_snapshot(std::istream& in, const Graph& g) {
    std::vector<double> amplitudes(g.arc_count(), 0.0);
    std::vector<bool> seen(g.arc_count(), false);
    std::string line;
    std::size_t line_no = 0;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream fields(line);
        long long v = -1;
        long long c = -1;
        std::string value;
        std::string extra;
        if (!(fields >> v >> c >> value) || (fields >> extra)) {
            throw std::invalid_argument("snapshot line " + std::to_string(line_no) + ": expected \"v c amplitude\"");
        }
        if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count() || c < 0 ||
            static_cast<std::size_t>(c) >= g.degree(static_cast<Vertex>(v))) {
            throw std::invalid_argument("snapshot line " + std::to_string(line_no) + ": no arc (" + std::to_string(v) +
                                        "," + std::to_string(c) + ")");
        }
        const ArcIndex a = g.arc(static_cast<Vertex>(v), static_cast<std::size_t>(c));
        if (seen[a]) throw std::invalid_argument("snapshot line " + std::to_string(line_no) + ": repeated arc");
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size()) {
            throw std::invalid_argument("snapshot line " + std::to_string(line_no) + ": bad amplitude \"" + value + "\"");
        }
        amplitudes[a] = x;
        seen[a] = true;
        ++count;
    }
    if (count != g.arc_count()) {
        throw std::invalid_argument("snapshot has " + std::to_string(count) + " arcs, graph has " +
                                    std::to_string(g.arc_count()));
    }
    return WalkState(g, std::move(amplitudes));
}

WalkState read_snapshot(const std::filesystem::path& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open snapshot " + path.string());
    return read_snapshot(in, g);
}

} // namespace qwalk
