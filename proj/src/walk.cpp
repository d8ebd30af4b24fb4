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

#include "qwalk/walk.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qwalk {

WalkState::WalkState(const Graph& g, std::vector<double> amplitudes)
    : graph_id_(g.id()), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != g.arc_count()) {
        throw std::invalid_argument("state has " + std::to_string(amplitudes_.size()) + " amplitudes, graph has " +
                                    std::to_string(g.arc_count()) + " arcs");
    }
}

double WalkState::norm() const {
    double sum = 0.0;
    for (double x : amplitudes_) sum += x * x;
    return std::sqrt(sum);
}

void WalkState::check_graph(const Graph& g) const {
    if (graph_id_ != g.id() || amplitudes_.size() != g.arc_count()) {
        throw std::invalid_argument("walk state does not belong to this graph");
    }
}

WalkState initial_state(const Graph& g) {
    if (g.arc_count() == 0) throw std::invalid_argument("initial_state: graph has no edges");
    return WalkState(g, std::vector<double>(g.arc_count(), 1.0 / std::sqrt(static_cast<double>(g.arc_count()))));
}

void apply_query(const Graph& g, WalkState& s, const MarkedSet& marked) {
    s.check_graph(g);
    auto amp = s.amplitudes();
    for (Vertex v : marked.vertices()) {
        for (ArcIndex a = g.arc_begin(v); a < g.arc_end(v); ++a) amp[a] = -amp[a];
    }
}

void apply_coin(const Graph& g, WalkState& s) {
    s.check_graph(g);
    auto amp = s.amplitudes();
    const auto offsets = g.offsets();
    const std::size_t n = g.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
        const ArcIndex begin = offsets[v];
        const ArcIndex end = offsets[v + 1];
        if (begin == end) continue;
        double sum = 0.0;
        for (ArcIndex a = begin; a < end; ++a) sum += amp[a];
        const double twice_mean = 2.0 * sum / static_cast<double>(end - begin);
        for (ArcIndex a = begin; a < end; ++a) amp[a] = twice_mean - amp[a];
    }
}

void apply_shift(const Graph& g, WalkState& s) {
    s.check_graph(g);
    auto amp = s.amplitudes();
    const auto rev = g.reverse_map();
    // The reverse map is a fixed-point-free involution, so swapping each
    // pair once from its lower index performs the whole permutation.
    for (ArcIndex a = 0; a < rev.size(); ++a) {
        const ArcIndex b = rev[a];
        if (a < b) std::swap(amp[a], amp[b]);
    }
}

void step(const Graph& g, WalkState& s, const MarkedSet& marked) {
    apply_query(g, s, marked);
    apply_coin(g, s);
    apply_shift(g, s);
}

double marked_probability(const Graph& g, const WalkState& s, const MarkedSet& marked) {
    s.check_graph(g);
    double p = 0.0;
    for (Vertex v : marked.vertices()) {
        for (ArcIndex a = g.arc_begin(v); a < g.arc_end(v); ++a) p += s[a] * s[a];
    }
    return p;
}

void evolve(const Graph& g, WalkState& s, const MarkedSet& marked, std::size_t t_max,
            const ProbabilityObserver& observer) {
    s.check_graph(g);
    const double initial_norm = s.norm();
    if (observer) observer(0, marked_probability(g, s, marked));
    for (std::size_t t = 1; t <= t_max; ++t) {
        step(g, s, marked);
        const double drift = std::abs(s.norm() - initial_norm);
        if (!(drift <= kNormDriftLimit)) {
            throw NormDriftError("norm drifted by " + std::to_string(drift) + " after step " + std::to_string(t));
        }
        if (observer) observer(t, marked_probability(g, s, marked));
    }
}

double overlap(const WalkState& a, const WalkState& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("overlap: dimension mismatch " + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[static_cast<ArcIndex>(i)] * b[static_cast<ArcIndex>(i)];
    return sum;
}

} // namespace qwalk
