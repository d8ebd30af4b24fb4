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

#include "qwalk/generators.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

namespace qwalk {

namespace {

std::uint64_t edge_key(Vertex a, Vertex b) {
    const Edge e(a, b);
    return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

// Pairs stubs one edge at a time, rejecting loops and repeats. Returns false
// when the pairing gets stuck so the caller can restart.
bool try_pair_stubs(std::size_t n, std::size_t d, std::mt19937_64& rng, std::vector<Edge>& edges) {
    std::vector<Vertex> stubs;
    stubs.reserve(n * d);
    for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
    std::unordered_set<std::uint64_t> present;
    edges.clear();

    while (!stubs.empty()) {
        const std::size_t budget = 50 * stubs.size() + 100;
        bool placed = false;
        for (std::size_t attempt = 0; attempt < budget && !placed; ++attempt) {
            const std::size_t i = uniform_below(rng, stubs.size());
            const std::size_t j = uniform_below(rng, stubs.size());
            const Vertex a = stubs[i];
            const Vertex b = stubs[j];
            if (i == j || a == b || present.contains(edge_key(a, b))) continue;
            present.insert(edge_key(a, b));
            edges.emplace_back(a, b);
            // remove the higher index first so the lower stays valid
            for (std::size_t k : {std::max(i, j), std::min(i, j)}) {
                stubs[k] = stubs.back();
                stubs.pop_back();
            }
            placed = true;
        }
        if (!placed) return false;
    }
    return true;
}

std::vector<Edge> regular_edges(std::size_t n, std::size_t d, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    for (int restart = 0; restart < 1000; ++restart) {
        if (try_pair_stubs(n, d, rng, edges)) return edges;
    }
    throw GraphError("random_regular: failed to pair stubs for n=" + std::to_string(n) + ", d=" + std::to_string(d));
}

} // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

Graph cycle(std::size_t n) {
    if (n < 3) throw GraphError("cycle: requires n >= 3, got n=" + std::to_string(n));
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < n; ++v) edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n));
    return Graph::from_edges(n, edges);
}

Graph path(std::size_t n) {
    if (n < 2) throw GraphError("path: requires n >= 2, got n=" + std::to_string(n));
    std::vector<Edge> edges;
    for (std::size_t v = 0; v + 1 < n; ++v) edges.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(v + 1));
    return Graph::from_edges(n, edges);
}

Graph torus2d(std::size_t rows, std::size_t cols) {
    if (rows < 3 || cols < 3) {
        throw GraphError("torus2d: requires rows >= 3 and cols >= 3, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    }
    std::vector<Edge> edges;
    edges.reserve(2 * rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const Vertex v = torus_vertex(rows, cols, r, c);
            edges.emplace_back(v, torus_vertex(rows, cols, r, c + 1));
            edges.emplace_back(v, torus_vertex(rows, cols, r + 1, c));
        }
    }
    return Graph::from_edges(rows * cols, edges);
}

Graph complete(std::size_t n) {
    if (n < 2) throw GraphError("complete: requires n >= 2, got n=" + std::to_string(n));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (d >= n) throw GraphError("random_regular: requires d < n, got n=" + std::to_string(n) + ", d=" + std::to_string(d));
    if ((n * d) % 2 != 0) {
        throw GraphError("random_regular: requires n*d even, got n=" + std::to_string(n) + ", d=" + std::to_string(d));
    }
    std::mt19937_64 rng(seed);
    const std::size_t complement_degree = n - 1 - d;
    if (complement_degree >= d) return Graph::from_edges(n, regular_edges(n, d, rng));

    // Dense case: pair the sparser complement and invert it.
    const auto sparse = regular_edges(n, complement_degree, rng);
    std::unordered_set<std::uint64_t> removed;
    for (const Edge& e : sparse) removed.insert(edge_key(e.u, e.v));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (!removed.contains(edge_key(u, v))) edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

} // namespace qwalk
