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

#include <cstdint>
#include <random>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Uniform integer in [0, bound) from a 64-bit Mersenne twister. Unlike
/// std::uniform_int_distribution the result is identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Cycle 0-1-...-(n-1)-0. Requires n >= 3.
Graph cycle(std::size_t n);

/// Path 0-1-...-(n-1). Requires n >= 2.
Graph path(std::size_t n);

/// Periodic rows x cols lattice, vertex (r, c) numbered r*cols + c.
/// Requires rows, cols >= 3 so that every vertex has four distinct neighbors.
Graph torus2d(std::size_t rows, std::size_t cols);

/// Requires n >= 2.
Graph complete(std::size_t n);

/// Uniformly paired d-regular simple graph; identical output for identical
/// (n, d, seed). Requires n*d even and d < n.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// Torus vertex id for (row, col), wrapping both coordinates.
inline Vertex torus_vertex(std::size_t rows, std::size_t cols, std::size_t row, std::size_t col) {
    return static_cast<Vertex>((row % rows) * cols + (col % cols));
}

} // namespace qwalk
