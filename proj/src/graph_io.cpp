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

#include "qwalk/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace qwalk {

Graph read_edge_list(std::istream& in) {
    long long n = -1;
    long long m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) throw GraphError("edge list: expected header \"n m\"");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long k = 0; k < m; ++k) {
        long long u = -1;
        long long v = -1;
        if (!(in >> u >> v)) {
            throw GraphError("edge list: expected " + std::to_string(m) + " edges, found " + std::to_string(k));
        }
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw GraphError("edge list: edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has endpoint outside [0, " + std::to_string(n) + ")");
        }
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    std::string trailing;
    if (in >> trailing) throw GraphError("edge list: unexpected trailing token \"" + trailing + "\"");
    return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open edge list " + path.string());
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

} // namespace qwalk
