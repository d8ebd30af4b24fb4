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
 * Simple undirected graph with per-vertex port numbering and a global
 * directed-arc index.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

using Vertex = std::uint32_t;
using ArcIndex = std::uint32_t;

/// Unordered edge, always stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Immutable simple graph.
 *
 * Arcs are the basis states |v,c> of the walk. Arcs leaving v occupy the
 * contiguous index range [arc_begin(v), arc_end(v)), and port c of v names
 * its c-th neighbor in ascending vertex order.
 */
class Graph {
  public:
    Graph() = default;

    /// Builds a graph from an edge list. Rejects self-loops, duplicate
    /// edges and out-of-range endpoints, naming the offending edge.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    [[nodiscard]] std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    [[nodiscard]] std::size_t edge_count() const { return heads_.size() / 2; }
    [[nodiscard]] std::size_t arc_count() const { return heads_.size(); }

    [[nodiscard]] std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    [[nodiscard]] ArcIndex arc_begin(Vertex v) const { return offsets_[v]; }
    [[nodiscard]] ArcIndex arc_end(Vertex v) const { return offsets_[v + 1]; }

    /// Arc index of (v, port).
    [[nodiscard]] ArcIndex arc(Vertex v, std::size_t port) const {
        return offsets_[v] + static_cast<ArcIndex>(port);
    }
    [[nodiscard]] Vertex tail(ArcIndex a) const { return tails_[a]; }
    [[nodiscard]] Vertex head(ArcIndex a) const { return heads_[a]; }
    [[nodiscard]] std::size_t port(ArcIndex a) const { return a - offsets_[tails_[a]]; }

    /// The arc pointing back along the same edge. An involution.
    [[nodiscard]] ArcIndex reverse(ArcIndex a) const { return reverse_[a]; }

    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
        return {heads_.data() + offsets_[v], degree(v)};
    }

    /// Arc from u to v, or arc_count() if u and v are not adjacent.
    [[nodiscard]] ArcIndex find_arc(Vertex u, Vertex v) const;
    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const { return find_arc(u, v) != arc_count(); }

    /// All edges, sorted.
    [[nodiscard]] std::vector<Edge> edges() const;

    /// Structural identity shared by copies; used to tie states to graphs.
    [[nodiscard]] std::uint64_t id() const { return id_; }

    [[nodiscard]] std::span<const ArcIndex> reverse_map() const { return reverse_; }
    [[nodiscard]] std::span<const ArcIndex> offsets() const { return offsets_; }

  private:
    std::vector<ArcIndex> offsets_{0};
    std::vector<Vertex> heads_;
    std::vector<Vertex> tails_;
    std::vector<ArcIndex> reverse_;
    std::uint64_t id_ = 0;
};

/// Free-function spelling of Graph::from_edges.
inline Graph build_graph(std::span<const Edge> edges, std::size_t n) { return Graph::from_edges(n, edges); }

/// Largest BFS eccentricity over all vertices (0 for edgeless graphs).
/// Disconnected graphs report the largest per-component diameter.
std::size_t diameter(const Graph& g);

std::string to_string(const Edge& e);

} // namespace qwalk
