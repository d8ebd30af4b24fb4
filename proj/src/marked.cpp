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

#include "qwalk/marked.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace qwalk {

MarkedSet::MarkedSet(const Graph& g, std::span<const Vertex> vertices) : vertices_(vertices.begin(), vertices.end()) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    if (!vertices_.empty() && vertices_.back() >= g.vertex_count()) {
        throw GraphError("marked vertex " + std::to_string(vertices_.back()) + " outside [0, " +
                         std::to_string(g.vertex_count()) + ")");
    }
}

bool MarkedSet::contains(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

std::size_t MarkedComponent::index_of(Vertex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return vertices.size();
    return static_cast<std::size_t>(it - vertices.begin());
}

std::vector<MarkedComponent> marked_components(const Graph& g, const MarkedSet& marked) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> is_marked(n, false);
    for (Vertex v : marked.vertices()) is_marked[v] = true;

    // color: -1 unvisited, 0/1 BFS parity
    std::vector<int> color(n, -1);
    std::vector<MarkedComponent> out;

    for (Vertex root : marked.vertices()) {
        if (color[root] != -1) continue;
        MarkedComponent comp;
        comp.host_edge_count = g.edge_count();
        bool bipartite = true;
        std::queue<Vertex> frontier;
        color[root] = 0;
        frontier.push(root);
        while (!frontier.empty()) {
            const Vertex v = frontier.front();
            frontier.pop();
            comp.vertices.push_back(v);
            for (Vertex w : g.neighbors(v)) {
                if (!is_marked[w]) continue;
                if (v < w) comp.internal_edges.emplace_back(v, w);
                if (color[w] == -1) {
                    color[w] = 1 - color[v];
                    frontier.push(w);
                } else if (color[w] == color[v]) {
                    bipartite = false;
                }
            }
        }
        std::sort(comp.vertices.begin(), comp.vertices.end());
        std::sort(comp.internal_edges.begin(), comp.internal_edges.end());

        comp.d_in.resize(comp.vertices.size(), 0);
        comp.d_out.resize(comp.vertices.size(), 0);
        for (Vertex v : comp.vertices) {
            const std::size_t i = comp.index_of(v);
            for (Vertex w : g.neighbors(v)) {
                if (is_marked[w]) {
                    ++comp.d_in[i];
                } else {
                    ++comp.d_out[i];
                }
            }
            comp.total_out += comp.d_out[i];
        }

        if (bipartite) {
            std::pair<std::vector<Vertex>, std::vector<Vertex>> sides;
            const int front_color = color[comp.vertices.front()];
            for (Vertex v : comp.vertices) {
                (color[v] == front_color ? sides.first : sides.second).push_back(v);
            }
            comp.bipartition = std::move(sides);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

} // namespace qwalk
