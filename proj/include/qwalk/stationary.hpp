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
 * Stationary states of the search step for connected marked components.
 *
 * A stationary state carries amplitude a on every arc except the arcs
 * between two marked vertices, where arc (i -> j) carries c_ij * a with
 * c_ij = c_ji. Such a state is fixed by the step when every marked vertex's
 * amplitudes sum to zero:
 *
 *     sum_{j in M, j ~ i} c_ij = -d_out(i)   for every marked i.
 *
 * The coefficients live on the undirected internal edges, so the system is
 * B c = -d_out with B the unoriented vertex-edge incidence matrix of the
 * component.
 */

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/graph.hpp"
#include "qwalk/marked.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class AssignmentSource { min_norm, injected };

const char* to_string(AssignmentSource source);

struct EdgeCoefficient {
    Edge edge;
    double c = 0.0;
};

/// Coefficients solving one component, plus the scale a that normalizes
/// the state built from this component alone.
struct StationaryAssignment {
    MarkedComponent component;
    std::vector<EdgeCoefficient> coefficients;  // aligned with component.internal_edges
    double scale_a = 0.0;
    AssignmentSource source = AssignmentSource::min_norm;

    /// Sum of c^2 over ordered pairs: every internal edge counted twice.
    [[nodiscard]] double sum_directed_c2() const;
    /// Sum of c over ordered pairs.
    [[nodiscard]] double sum_directed_c() const;
};

/// Thrown when a component admits no stationary state.
class InfeasibleStationaryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Combinatorial existence test: non-bipartite components always admit a
/// stationary state; bipartite ones iff both sides have equal d_out sums.
bool exists_stationary(const MarkedComponent& comp);

/// Human-readable reason exists_stationary() is false, e.g.
/// "bipartite sums 1 != 0". Empty when a stationary state exists.
std::string infeasibility_reason(const MarkedComponent& comp);

/// Unoriented incidence matrix: rows follow comp.vertices, columns follow
/// comp.internal_edges.
Eigen::MatrixXd incidence_matrix(const MarkedComponent& comp);

/// Minimum-norm least-squares solution of B c = -d_out and its fit.
struct LeastSquaresSolution {
    Eigen::VectorXd c;
    double residual = 0.0;  // ||B c + d_out||_2
    double rhs_norm = 0.0;  // ||d_out||_2
    bool feasible = false;  // residual <= 1e-8 * max(1, rhs_norm)
};

LeastSquaresSolution min_norm_least_squares(const MarkedComponent& comp);

/// Largest per-vertex violation |sum_j c_ij + d_out(i)|.
double constraint_residual(const MarkedComponent& comp, std::span<const EdgeCoefficient> coefficients);

/// 1 / sqrt(2m - 2|E_M| + sum_directed c^2) for a single component.
double component_scale(const MarkedComponent& comp, std::span<const EdgeCoefficient> coefficients);

/**
 * Minimum sum of c^2 subject to the vertex-sum constraints. Throws
 * InfeasibleStationaryError naming the violated bipartite sum condition when
 * no stationary state exists, and std::logic_error if the least-squares
 * feasibility ever disagrees with exists_stationary().
 */
StationaryAssignment solve_min_norm(const MarkedComponent& comp);

/**
 * Wraps a caller-chosen coefficient set. Every internal edge of the
 * component must appear exactly once and no other edge may appear; the
 * per-vertex constraint must hold to 1e-10.
 */
StationaryAssignment inject_assignment(const MarkedComponent& comp, std::span<const EdgeCoefficient> coefficients);

/// Shared scale a for the state carrying all given assignments at once.
double global_scale(const Graph& g, std::span<const StationaryAssignment> assignments);

/**
 * Assembles the unit-norm stationary state: amplitude a everywhere, c_ij * a
 * on internal arcs, with one a computed over all components. Rejects
 * overlapping components, coefficient edges foreign to g, and components
 * taken from a different host graph.
 */
WalkState build_state(const Graph& g, std::span<const StationaryAssignment> assignments);

/// Outcome of checking a state against the search step.
struct StationarityReport {
    double residual = 0.0;            // ||step(s) - s||_inf
    double unmarked_spread = 0.0;     // max - min amplitude over unmarked arcs
    double max_marked_sum = 0.0;      // max |sum of a marked vertex's amplitudes|
    double max_reverse_gap = 0.0;     // max |s(u->v) - s(v->u)|
    bool unmarked_equal = true;
    bool marked_sums_zero = true;
    bool reverse_pairs_equal = true;

    [[nodiscard]] bool sufficient_conditions_hold() const {
        return unmarked_equal && marked_sums_zero && reverse_pairs_equal;
    }
    /// Names of the failed sufficient conditions.
    [[nodiscard]] std::vector<std::string> failures() const;
};

StationarityReport verify_stationary(const Graph& g, const MarkedSet& marked, const WalkState& s,
                                     double tolerance = 1e-12);

} // namespace qwalk
