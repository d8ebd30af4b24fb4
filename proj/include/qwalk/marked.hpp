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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Sorted, duplicate-free set of marked vertices validated against a graph.
class MarkedSet {
  public:
    MarkedSet() = default;
    MarkedSet(const Graph& g, std::span<const Vertex> vertices);
    MarkedSet(const Graph& g, std::initializer_list<Vertex> vertices)
        : MarkedSet(g, std::span<const Vertex>(vertices.begin(), vertices.size())) {}

    [[nodiscard]] std::span<const Vertex> vertices() const { return vertices_; }
    [[nodiscard]] std::size_t size() const { return vertices_.size(); }
    [[nodiscard]] bool empty() const { return vertices_.empty(); }
    [[nodiscard]] bool contains(Vertex v) const;

  private:
    std::vector<Vertex> vertices_;
};

/**
 * One connected component of the marked-induced subgraph, with the degree
 * bookkeeping the stationary-state and bound computations consume.
 *
 * Per-vertex vectors (d_in, d_out) are aligned with `vertices`.
 */
struct MarkedComponent {
    std::vector<Vertex> vertices;      // sorted
    std::vector<Edge> internal_edges;  // sorted; both endpoints in this component
    std::vector<std::size_t> d_in;     // neighbors inside the marked set
    std::vector<std::size_t> d_out;    // neighbors outside the marked set
    std::size_t total_out = 0;
    std::size_t host_edge_count = 0;   // m of the host graph
    /// Two sides of a proper 2-coloring; the first side holds vertices.front().
    std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> bipartition;

    /// Position of v in `vertices`, or vertices.size() when absent.
    [[nodiscard]] std::size_t index_of(Vertex v) const;
    [[nodiscard]] bool contains(Vertex v) const { return index_of(v) != vertices.size(); }
    [[nodiscard]] bool is_bipartite() const { return bipartition.has_value(); }
};

/// Splits the marked set into connected components ordered by smallest vertex.
std::vector<MarkedComponent> marked_components(const Graph& g, const MarkedSet& marked);

} // namespace qwalk
