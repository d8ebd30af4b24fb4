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

#include "qwalk/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qwalk {

namespace {

constexpr double kConstraintTolerance = 1e-10;

std::size_t side_sum(const MarkedComponent& comp, std::span<const Vertex> side) {
    std::size_t sum = 0;
    for (Vertex v : side) sum += comp.d_out[comp.index_of(v)];
    return sum;
}

} // namespace

const char* to_string(AssignmentSource source) {
    return source == AssignmentSource::min_norm ? "min_norm" : "injected";
}

double StationaryAssignment::sum_directed_c2() const {
    double sum = 0.0;
    for (const auto& ec : coefficients) sum += 2.0 * ec.c * ec.c;
    return sum;
}

double StationaryAssignment::sum_directed_c() const {
    double sum = 0.0;
    for (const auto& ec : coefficients) sum += 2.0 * ec.c;
    return sum;
}

bool exists_stationary(const MarkedComponent& comp) {
    if (!comp.bipartition) return true;
    return side_sum(comp, comp.bipartition->first) == side_sum(comp, comp.bipartition->second);
}

std::string infeasibility_reason(const MarkedComponent& comp) {
    if (exists_stationary(comp)) return {};
    return "bipartite sums " + std::to_string(side_sum(comp, comp.bipartition->first)) +
           " != " + std::to_string(side_sum(comp, comp.bipartition->second));
}

Eigen::MatrixXd incidence_matrix(const MarkedComponent& comp) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(comp.vertices.size()),
                                              static_cast<Eigen::Index>(comp.internal_edges.size()));
    for (std::size_t k = 0; k < comp.internal_edges.size(); ++k) {
        const Edge& e = comp.internal_edges[k];
        b(static_cast<Eigen::Index>(comp.index_of(e.u)), static_cast<Eigen::Index>(k)) = 1.0;
        b(static_cast<Eigen::Index>(comp.index_of(e.v)), static_cast<Eigen::Index>(k)) = 1.0;
    }
    return b;
}

LeastSquaresSolution min_norm_least_squares(const MarkedComponent& comp) {
    const auto rows = static_cast<Eigen::Index>(comp.vertices.size());
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) rhs(i) = -static_cast<double>(comp.d_out[static_cast<std::size_t>(i)]);

    LeastSquaresSolution out;
    out.rhs_norm = rhs.norm();
    if (comp.internal_edges.empty()) {
        out.c = Eigen::VectorXd(0);
        out.residual = out.rhs_norm;
    } else {
        const Eigen::MatrixXd b = incidence_matrix(comp);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(b);
        out.c = cod.solve(rhs);
        out.residual = (b * out.c - rhs).norm();
    }
    out.feasible = out.residual <= 1e-8 * std::max(1.0, out.rhs_norm);
    return out;
}

double constraint_residual(const MarkedComponent& comp, std::span<const EdgeCoefficient> coefficients) {
    std::vector<double> sums(comp.vertices.size(), 0.0);
    for (const auto& ec : coefficients) {
        const std::size_t iu = comp.index_of(ec.edge.u);
        const std::size_t iv = comp.index_of(ec.edge.v);
        if (iu == comp.vertices.size() || iv == comp.vertices.size()) return std::numeric_limits<double>::infinity();
        sums[iu] += ec.c;
        sums[iv] += ec.c;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
        worst = std::max(worst, std::abs(sums[i] + static_cast<double>(comp.d_out[i])));
    }
    return worst;
}

double component_scale(const MarkedComponent& comp, std::span<const EdgeCoefficient> coefficients) {
    double c2 = 0.0;
    for (const auto& ec : coefficients) c2 += 2.0 * ec.c * ec.c;
    const double norm2 = 2.0 * static_cast<double>(comp.host_edge_count) -
                         2.0 * static_cast<double>(comp.internal_edges.size()) + c2;
    return 1.0 / std::sqrt(norm2);
}

StationaryAssignment solve_min_norm(const MarkedComponent& comp) {
    const bool exists = exists_stationary(comp);
    const LeastSquaresSolution ls = min_norm_least_squares(comp);
    if (exists != ls.feasible) {
        throw std::logic_error("stationary solver disagrees with bipartite existence test (least-squares residual " +
                               std::to_string(ls.residual) + ")");
    }
    if (!exists) throw InfeasibleStationaryError("no stationary state: " + infeasibility_reason(comp));

    StationaryAssignment asg;
    asg.component = comp;
    asg.source = AssignmentSource::min_norm;
    asg.coefficients.reserve(comp.internal_edges.size());
    for (std::size_t k = 0; k < comp.internal_edges.size(); ++k) {
        asg.coefficients.push_back({comp.internal_edges[k], ls.c(static_cast<Eigen::Index>(k))});
    }
    const double residual = constraint_residual(comp, asg.coefficients);
    if (residual > kConstraintTolerance) {
        throw std::logic_error("min-norm solution violates the vertex-sum constraint by " + std::to_string(residual));
    }
    asg.scale_a = component_scale(comp, asg.coefficients);
    return asg;
}

StationaryAssignment inject_assignment(const MarkedComponent& comp, std::span<const EdgeCoefficient> coefficients) {
    StationaryAssignment asg;
    asg.component = comp;
    asg.source = AssignmentSource::injected;
    asg.coefficients.reserve(comp.internal_edges.size());
    for (const Edge& e : comp.internal_edges) {
        auto it = std::find_if(coefficients.begin(), coefficients.end(),
                               [&](const EdgeCoefficient& ec) { return ec.edge == e; });
        if (it == coefficients.end()) throw std::invalid_argument("assignment misses internal edge " + to_string(e));
        if (std::find_if(it + 1, coefficients.end(), [&](const EdgeCoefficient& ec) { return ec.edge == e; }) !=
            coefficients.end()) {
            throw std::invalid_argument("assignment repeats edge " + to_string(e));
        }
        asg.coefficients.push_back({e, it->c});
    }
    if (coefficients.size() != comp.internal_edges.size()) {
        for (const auto& ec : coefficients) {
            if (!std::binary_search(comp.internal_edges.begin(), comp.internal_edges.end(), ec.edge)) {
                throw std::invalid_argument("assignment edge " + to_string(ec.edge) + " is not internal to the component");
            }
        }
    }
    if (!exists_stationary(comp)) throw InfeasibleStationaryError("no stationary state: " + infeasibility_reason(comp));
    const double residual = constraint_residual(comp, asg.coefficients);
    if (!(residual <= kConstraintTolerance)) {
        throw std::invalid_argument("assignment violates the vertex-sum constraint by " + std::to_string(residual));
    }
    asg.scale_a = component_scale(comp, asg.coefficients);
    return asg;
}

double global_scale(const Graph& g, std::span<const StationaryAssignment> assignments) {
    double norm2 = 2.0 * static_cast<double>(g.edge_count());
    for (const auto& asg : assignments) {
        norm2 += asg.sum_directed_c2() - 2.0 * static_cast<double>(asg.coefficients.size());
    }
    return 1.0 / std::sqrt(norm2);
}

WalkState build_state(const Graph& g, std::span<const StationaryAssignment> assignments) {
    if (g.arc_count() == 0) throw std::invalid_argument("build_state: graph has no edges");
    std::vector<bool> owned(g.vertex_count(), false);
    for (const auto& asg : assignments) {
        if (asg.component.host_edge_count != g.edge_count()) {
            throw std::invalid_argument("build_state: component was taken from a different graph");
        }
        for (Vertex v : asg.component.vertices) {
            if (v >= g.vertex_count()) throw std::invalid_argument("build_state: vertex " + std::to_string(v) + " not in graph");
            if (owned[v]) throw std::invalid_argument("build_state: components overlap at vertex " + std::to_string(v));
            owned[v] = true;
        }
        for (const auto& ec : asg.coefficients) {
            if (!g.has_edge(ec.edge.u, ec.edge.v)) {
                throw std::invalid_argument("build_state: coefficient edge " + to_string(ec.edge) + " is not in the graph");
            }
        }
    }

    const double a = global_scale(g, assignments);
    WalkState s(g, std::vector<double>(g.arc_count(), a));
    for (const auto& asg : assignments) {
        for (const auto& ec : asg.coefficients) {
            s[g.find_arc(ec.edge.u, ec.edge.v)] = ec.c * a;
            s[g.find_arc(ec.edge.v, ec.edge.u)] = ec.c * a;
        }
    }
    return s;
}

std::vector<std::string> StationarityReport::failures() const {
    std::vector<std::string> out;
    if (!unmarked_equal) out.emplace_back("unmarked amplitudes not all equal");
    if (!marked_sums_zero) out.emplace_back("marked vertex amplitude sum not zero");
    if (!reverse_pairs_equal) out.emplace_back("reverse arc amplitudes not equal");
    return out;
}

StationarityReport verify_stationary(const Graph& g, const MarkedSet& marked, const WalkState& s, double tolerance) {
    s.check_graph(g);
    StationarityReport report;

    WalkState next = s;
    step(g, next, marked);
    for (ArcIndex a = 0; a < s.size(); ++a) report.residual = std::max(report.residual, std::abs(next[a] - s[a]));

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        double sum = 0.0;
        for (ArcIndex a = g.arc_begin(v); a < g.arc_end(v); ++a) sum += s[a];
        if (marked.contains(v)) {
            report.max_marked_sum = std::max(report.max_marked_sum, std::abs(sum));
        } else {
            for (ArcIndex a = g.arc_begin(v); a < g.arc_end(v); ++a) {
                lo = std::min(lo, s[a]);
                hi = std::max(hi, s[a]);
            }
        }
    }
    report.unmarked_spread = hi >= lo ? hi - lo : 0.0;
    for (ArcIndex a = 0; a < s.size(); ++a) {
        report.max_reverse_gap = std::max(report.max_reverse_gap, std::abs(s[a] - s[g.reverse(a)]));
    }
    report.unmarked_equal = report.unmarked_spread <= tolerance;
    report.marked_sums_zero = report.max_marked_sum <= tolerance;
    report.reverse_pairs_equal = report.max_reverse_gap <= tolerance;
    return report;
}

} // namespace qwalk
