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
 * Upper bounds on the marked-vertex probability of the search walk when the
 * marked components admit stationary states, and the empirical oracles used
 * to check them.
 *
 * Starting from the uniform state, the walk splits into a fixed stationary
 * part and a remainder whose norm is conserved. With a0^2 = 1/(2m), for every
 * step t
 *
 *     p_M(t) <= 4 a0^2 * sum_l ( C_l + 2 D_l + 2 |E_l| )
 *
 * where C_l is the sum of c^2 over ordered internal pairs of component l,
 * D_l its outgoing degree and |E_l| its internal edge count.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/marked.hpp"
#include "qwalk/stationary.hpp"

namespace qwalk {

struct ComponentBoundTerm {
    std::size_t component_id = 0;
    double sum_directed_c2 = 0.0;
    std::size_t total_out = 0;
    std::size_t internal_edges = 0;
    double term = 0.0;  // 4 a0^2 (sum_directed_c2 + 2 total_out + 2 internal_edges)
    AssignmentSource source = AssignmentSource::min_norm;
};

struct BoundReport {
    std::vector<ComponentBoundTerm> per_component;
    double total_bound = 0.0;
    std::size_t m = 0;
    /// injected if any component used an injected assignment.
    AssignmentSource assignment_source = AssignmentSource::min_norm;
};

/// Bound contribution of one component. Throws std::invalid_argument when
/// the assignment was solved for a different component.
double component_bound(const MarkedComponent& comp, const StationaryAssignment& asg, std::size_t m);

/// Sum of component bounds over disjoint components. Rejects overlaps.
BoundReport total_bound(std::span<const StationaryAssignment> assignments, std::size_t m);

/// Key-value text form, one block per component.
void write_bound_report(std::ostream& out, const BoundReport& report);

/**
 * The two norms the bound argument balances, in units of a0^2:
 *   stationary_marked = sum_directed c^2 + D   (stationary mass on marked arcs)
 *   remainder         = sum_directed (c - 1)^2 (norm of the moving part)
 */
struct BoundSplit {
    double stationary_marked = 0.0;
    double remainder = 0.0;
    /// a0^2 (sqrt(stationary_marked) + sqrt(remainder))^2, never above the
    /// component bound.
    double sharp_bound = 0.0;
};

BoundSplit split_bound(const StationaryAssignment& asg, std::size_t m);

/// f(x) = sum_i (x_i - a_i)^2.
double sphere_objective(std::span<const double> x, std::span<const double> a);

/// Maximizer of sphere_objective over the sphere of radius r: x = -(r/|a|) a.
/// Rejects a = 0 (every point of the sphere is a maximizer) and r < 0.
std::vector<double> lemma_argmax(std::span<const double> a, double r);

struct SphereSearchResult {
    std::vector<double> x;
    double f = 0.0;
};

/**
 * Independent oracle for lemma_argmax: best of `samples` uniform points on
 * the radius-r sphere, then projected coordinate ascent from that point
 * (100 sweeps, step 1e-2 r halving when a sweep makes no progress).
 * Deterministic for a given seed. Dimension must be 1..8; in dimension 1 the
 * two sphere points are compared exactly.
 */
SphereSearchResult lemma_brute_force(std::span<const double> a, double r, std::size_t samples, std::uint64_t seed);

struct ProbabilityPeak {
    double p0 = 0.0;
    double max_p = 0.0;
    std::size_t argmax_t = 0;
};

/// Evolves a fresh uniform state for t_max steps and reports the largest
/// p_M(t) over t in [0, t_max].
ProbabilityPeak max_marked_probability_oracle(const Graph& g, const MarkedSet& marked, std::size_t t_max);

/// 10 * diameter^2, capped at 10^4.
std::size_t default_t_max(const Graph& g);

} // namespace qwalk
