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

#include "qwalk/graph.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>

namespace qwalk {

namespace {

std::uint64_t next_graph_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// Returns (farthest vertex, its distance) and fills dist.
std::pair<Vertex, std::size_t> bfs_farthest(const Graph& g, Vertex source, std::vector<std::size_t>& dist) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::queue<Vertex> frontier;
    dist[source] = 0;
    frontier.push(source);
    Vertex far = source;
    while (!frontier.empty()) {
        Vertex v = frontier.front();
        frontier.pop();
        if (dist[v] > dist[far]) far = v;
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                frontier.push(w);
            }
        }
    }
    return {far, dist[far]};
}

} // namespace

std::string to_string(const Edge& e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    if (n > std::numeric_limits<Vertex>::max()) throw GraphError("vertex count too large: " + std::to_string(n));
    if (2 * edges.size() > std::numeric_limits<ArcIndex>::max())
        throw GraphError("edge count too large: " + std::to_string(edges.size()));

    std::vector<Edge> sorted(edges.begin(), edges.end());
    for (const Edge& e : sorted) {
        if (e.u == e.v) throw GraphError("self-loop at edge " + to_string(e));
        if (e.v >= n) throw GraphError("edge " + to_string(e) + " has endpoint outside [0, " + std::to_string(n) + ")");
    }
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
        throw GraphError("duplicate edge " + to_string(*dup));

    Graph g;
    g.id_ = next_graph_id();
    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : sorted) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

    const std::size_t arcs = 2 * sorted.size();
    g.heads_.resize(arcs);
    g.tails_.resize(arcs);
    std::vector<ArcIndex> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : sorted) {
        g.heads_[fill[e.u]++] = e.v;
        g.heads_[fill[e.v]++] = e.u;
    }
    for (Vertex v = 0; v < n; ++v) {
        std::sort(g.heads_.begin() + g.offsets_[v], g.heads_.begin() + g.offsets_[v + 1]);
        for (ArcIndex a = g.offsets_[v]; a < g.offsets_[v + 1]; ++a) g.tails_[a] = v;
    }

    g.reverse_.resize(arcs);
    for (ArcIndex a = 0; a < arcs; ++a) {
        const Vertex v = g.tails_[a];
        const Vertex w = g.heads_[a];
        if (v < w) {
            const ArcIndex back = g.find_arc(w, v);
            g.reverse_[a] = back;
            g.reverse_[back] = a;
        }
    }
    return g;
}

ArcIndex Graph::find_arc(Vertex u, Vertex v) const {
    if (u >= vertex_count()) return static_cast<ArcIndex>(arc_count());
    auto nbrs = neighbors(u);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
    if (it == nbrs.end() || *it != v) return static_cast<ArcIndex>(arc_count());
    return offsets_[u] + static_cast<ArcIndex>(it - nbrs.begin());
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (ArcIndex a = 0; a < arc_count(); ++a) {
        if (tails_[a] < heads_[a]) out.emplace_back(tails_[a], heads_[a]);
    }
    return out;
}

std::size_t diameter(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return 0;
    std::vector<std::size_t> dist(n);
    std::size_t best = 0;
    if (n <= 4096) {
        for (Vertex v = 0; v < n; ++v) best = std::max(best, bfs_farthest(g, v, dist).second);
        return best;
    }
    // Double sweep from one vertex per component: exact on trees and
    // vertex-transitive graphs, a lower bound otherwise.
    std::vector<bool> seen(n, false);
    for (Vertex v = 0; v < n; ++v) {
        if (seen[v]) continue;
        auto [far, d0] = bfs_farthest(g, v, dist);
        for (Vertex w = 0; w < n; ++w) {
            if (dist[w] != kUnreached) seen[w] = true;
        }
        best = std::max({best, d0, bfs_farthest(g, far, dist).second});
    }
    return best;
}

} // namespace qwalk
