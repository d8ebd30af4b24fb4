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
 * Coined discrete-time quantum walk with Grover coin, flip-flop shift and
 * marked-vertex sign query, applied matrix-free over a real amplitude buffer.
 *
 * The search step is U' = S * C * Q: the query negates every amplitude leaving
 * a marked vertex, the coin maps x_c -> (2/d) * sum(x) - x_c at each vertex,
 * and the shift moves each arc's amplitude onto its reverse arc.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/marked.hpp"

namespace qwalk {

/// Real amplitude vector over the arcs of one graph.
class WalkState {
  public:
    WalkState() = default;
    /// All-zero state on g.
    explicit WalkState(const Graph& g) : graph_id_(g.id()), amplitudes_(g.arc_count(), 0.0) {}
    WalkState(const Graph& g, std::vector<double> amplitudes);

    [[nodiscard]] std::uint64_t graph_id() const { return graph_id_; }
    [[nodiscard]] std::size_t size() const { return amplitudes_.size(); }
    [[nodiscard]] std::span<const double> amplitudes() const { return amplitudes_; }
    [[nodiscard]] std::span<double> amplitudes() { return amplitudes_; }
    double& operator[](ArcIndex a) { return amplitudes_[a]; }
    double operator[](ArcIndex a) const { return amplitudes_[a]; }

    [[nodiscard]] double norm() const;

    /// Throws std::invalid_argument unless the state lives on g.
    void check_graph(const Graph& g) const;

  private:
    std::uint64_t graph_id_ = 0;
    std::vector<double> amplitudes_;
};

class NormDriftError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Uniform superposition 1/sqrt(2m) over all arcs. Rejects edgeless graphs.
WalkState initial_state(const Graph& g);

void apply_query(const Graph& g, WalkState& s, const MarkedSet& marked);
void apply_coin(const Graph& g, WalkState& s);
void apply_shift(const Graph& g, WalkState& s);

/// One search step: query, then coin, then shift.
void step(const Graph& g, WalkState& s, const MarkedSet& marked);

/// Probability mass on arcs leaving marked vertices.
double marked_probability(const Graph& g, const WalkState& s, const MarkedSet& marked);

/// Receives (t, p_M(t)).
using ProbabilityObserver = std::function<void(std::size_t, double)>;

/// Norm drift beyond which evolve() stops with NormDriftError.
inline constexpr double kNormDriftLimit = 1e-6;

/**
 * Applies t_max search steps. The observer sees (0, p_M(0)) before the first
 * step and (t, p_M(t)) after step t. The state is never renormalized; a norm
 * drifting by more than kNormDriftLimit throws NormDriftError.
 */
void evolve(const Graph& g, WalkState& s, const MarkedSet& marked, std::size_t t_max,
            const ProbabilityObserver& observer = {});

/// Inner product over arcs. Both states must have the same length.
double overlap(const WalkState& a, const WalkState& b);

} // namespace qwalk
