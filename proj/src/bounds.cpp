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

#include "qwalk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <set>

#include "qwalk/snapshot.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

namespace {

double unit_scale_squared(std::size_t m) {
    if (m == 0) throw std::invalid_argument("bound: graph has no edges");
    return 1.0 / (2.0 * static_cast<double>(m));
}

double bound_bracket(const StationaryAssignment& asg) {
    return asg.sum_directed_c2() + 2.0 * static_cast<double>(asg.component.total_out) +
           2.0 * static_cast<double>(asg.component.internal_edges.size());
}

// Uniform double in [0, 1) with 53 random bits.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller on the generator's raw output, so samples do not depend on the
// standard library's distribution implementation.
double standard_normal(std::mt19937_64& rng) {
    const double u1 = 1.0 - unit_uniform(rng);  // (0, 1]
    const double u2 = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void project_to_sphere(std::vector<double>& x, double r) {
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return;
    for (double& v : x) v *= r / norm;
}

} // namespace

double component_bound(const MarkedComponent& comp, const StationaryAssignment& asg, std::size_t m) {
    if (asg.component.vertices != comp.vertices || asg.component.internal_edges != comp.internal_edges) {
        throw std::invalid_argument("component_bound: assignment was solved for a different component");
    }
    return 4.0 * unit_scale_squared(m) * bound_bracket(asg);
}

BoundReport total_bound(std::span<const StationaryAssignment> assignments, std::size_t m) {
    BoundReport report;
    report.m = m;
    std::set<Vertex> seen;
    for (std::size_t k = 0; k < assignments.size(); ++k) {
        const auto& asg = assignments[k];
        for (Vertex v : asg.component.vertices) {
            if (!seen.insert(v).second) {
                throw std::invalid_argument("total_bound: components overlap at vertex " + std::to_string(v));
            }
        }
        ComponentBoundTerm term;
        term.component_id = k;
        term.sum_directed_c2 = asg.sum_directed_c2();
        term.total_out = asg.component.total_out;
        term.internal_edges = asg.component.internal_edges.size();
        term.term = component_bound(asg.component, asg, m);
        term.source = asg.source;
        if (asg.source == AssignmentSource::injected) report.assignment_source = AssignmentSource::injected;
        report.total_bound += term.term;
        report.per_component.push_back(term);
    }
    return report;
}

void write_bound_report(std::ostream& out, const BoundReport& report) {
    out << "m = " << report.m << '\n';
    out << "assignment_source = " << to_string(report.assignment_source) << '\n';
    out << "total_bound = " << format_amplitude(report.total_bound) << '\n';
    for (const auto& t : report.per_component) {
        out << '\n' << "[component " << t.component_id << "]\n";
        out << "source = " << to_string(t.source) << '\n';
        out << "sum_directed_c2 = " << format_amplitude(t.sum_directed_c2) << '\n';
        out << "total_out = " << t.total_out << '\n';
        out << "internal_edges = " << t.internal_edges << '\n';
        out << "term = " << format_amplitude(t.term) << '\n';
    }
}

BoundSplit split_bound(const StationaryAssignment& asg, std::size_t m) {
    BoundSplit split;
    split.stationary_marked = static_cast<double>(asg.component.total_out);
    for (const auto& ec : asg.coefficients) {
        split.stationary_marked += 2.0 * ec.c * ec.c;
        split.remainder += 2.0 * (ec.c - 1.0) * (ec.c - 1.0);
    }
    const double root_sum = std::sqrt(split.stationary_marked) + std::sqrt(split.remainder);
    split.sharp_bound = unit_scale_squared(m) * root_sum * root_sum;
    return split;
}

double sphere_objective(std::span<const double> x, std::span<const double> a) {
    if (x.size() != a.size()) throw std::invalid_argument("sphere_objective: dimension mismatch");
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) f += (x[i] - a[i]) * (x[i] - a[i]);
    return f;
}

std::vector<double> lemma_argmax(std::span<const double> a, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("lemma_argmax: radius must be nonnegative");
    double norm = 0.0;
    for (double v : a) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::invalid_argument("lemma_argmax: zero center has no unique maximizer");
    std::vector<double> x(a.size());
    const double scale = r / norm;
    for (std::size_t i = 0; i < a.size(); ++i) x[i] = -scale * a[i];
    return x;
}

SphereSearchResult lemma_brute_force(std::span<const double> a, double r, std::size_t samples, std::uint64_t seed) {
    const std::size_t dim = a.size();
    if (dim == 0 || dim > 8) throw std::invalid_argument("lemma_brute_force: dimension must be in [1, 8]");
    if (samples == 0) throw std::invalid_argument("lemma_brute_force: need at least one sample");

    SphereSearchResult best;
    if (dim == 1) {
        const double minus = (-r - a[0]) * (-r - a[0]);
        const double plus = (r - a[0]) * (r - a[0]);
        best.x = {minus >= plus ? -r : r};
        best.f = std::max(minus, plus);
        return best;
    }

    std::mt19937_64 rng(seed);
    std::vector<double> x(dim);
    best.f = -1.0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (double& v : x) v = standard_normal(rng);
        project_to_sphere(x, r);
        const double f = sphere_objective(x, a);
        if (f > best.f) {
            best.f = f;
            best.x = x;
        }
    }

    double step_size = 1e-2 * r;
    for (int sweep = 0; sweep < 100 && step_size > 0.0; ++sweep) {
        bool improved = false;
        for (std::size_t i = 0; i < dim; ++i) {
            for (double direction : {1.0, -1.0}) {
                // keep walking along this coordinate while it pays off
                for (;;) {
                    std::vector<double> candidate = best.x;
                    candidate[i] += direction * step_size;
                    project_to_sphere(candidate, r);
                    const double f = sphere_objective(candidate, a);
                    if (!(f > best.f)) break;
                    best.f = f;
                    best.x = std::move(candidate);
                    improved = true;
                }
            }
        }
        if (!improved) step_size *= 0.5;
    }
    return best;
}

ProbabilityPeak max_marked_probability_oracle(const Graph& g, const MarkedSet& marked, std::size_t t_max) {
    ProbabilityPeak peak;
    WalkState s = initial_state(g);
    evolve(g, s, marked, t_max, [&](std::size_t t, double p) {
        if (t == 0) peak.p0 = p;
        if (t == 0 || p > peak.max_p) {
            peak.max_p = p;
            peak.argmax_t = t;
        }
    });
    return peak;
}

std::size_t default_t_max(const Graph& g) {
    const std::size_t d = diameter(g);
    return std::min<std::size_t>(10 * d * d, 10000);
}

} // namespace qwalk
